// Copyright 2026 gmsfit authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GMSFIT_ERRORS_HPP_
#define GMSFIT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace gmsfit {

enum class ErrorCode {
  kDomain = 1,          // a precondition on parameters or arguments is violated
  kNonConvergence = 2,  // a series did not reach tolerance within its term budget
  kRuntimeLimit = 3,    // a single excursion exceeded the event safety cap
  kInternal = 4,        // a library invariant was broken (always a bug)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(ErrorCode::kDomain, w) {}
};

struct NonConvergence : Error {
  explicit NonConvergence(const std::string& w)
      : Error(ErrorCode::kNonConvergence, w) {}
};

struct RuntimeLimit : Error {
  explicit RuntimeLimit(const std::string& w)
      : Error(ErrorCode::kRuntimeLimit, w) {}
};

struct InternalError : Error {
  explicit InternalError(const std::string& w)
      : Error(ErrorCode::kInternal, w) {}
};

}  // namespace gmsfit

#endif  // GMSFIT_ERRORS_HPP_
