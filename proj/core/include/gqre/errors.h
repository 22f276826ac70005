// Copyright 2026 The GQRE Authors
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

#ifndef GQRE_ERRORS_H_
#define GQRE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace gqre {

// Shapes of a game, profile or regularizer set do not line up.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A quantity (gradient, Hessian, importance weight) is unbounded at the
// requested point, typically a boundary point of the simplex.
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An iterative or root-finding routine failed to produce an answer.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid user-supplied parameters (ranges, names, malformed documents).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace gqre

#endif  // GQRE_ERRORS_H_
