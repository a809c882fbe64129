// Copyright 2026 The ugate Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace ugate {

/// An eigenphase sits on the branch cut of the principal logarithm.
class BranchAmbiguity : public std::runtime_error {
 public:
  explicit BranchAmbiguity(const std::string& what) : std::runtime_error(what) {}
};

/// The group-commutator solver (or a recursion level using it) did not
/// converge.
class ConvergenceFailure : public std::runtime_error {
 public:
  ConvergenceFailure(const std::string& what, int level = -1)
      : std::runtime_error(what), level_(level) {}
  /// Recursion level at which the failure occurred, -1 if not applicable.
  int level() const { return level_; }

 private:
  int level_;
};

}  // namespace ugate
