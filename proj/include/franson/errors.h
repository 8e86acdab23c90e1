// Copyright 2026 The Franson Erasure Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FRANSON_ERRORS_H
#define FRANSON_ERRORS_H

#include <stdexcept>
#include <string>

namespace franson {

/// Raised when an input violates a documented precondition or invariant.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Raised by auto_trim when the circular mean of the region's phases is undefined.
struct AmbiguousTrim : DomainError {
    using DomainError::DomainError;
};

}  // namespace franson

#endif
