// Copyright 2026 The repgame Authors
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

#ifndef REPGAME_ERRORS_HPP_
#define REPGAME_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace repgame {

// Malformed input document (not JSON, wrong value types, missing keys).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed input that violates a model invariant. The message names it.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An instance whose history tree or plan enumeration exceeds its budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The LP backend could not certify a status for an instance.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A play-time contract was broken: an impossible action was observed, or a
// controller was driven out of order.
class PlayError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace repgame

#endif  // REPGAME_ERRORS_HPP_
