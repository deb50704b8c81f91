// Copyright 2026 The retrodict Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace retro {

/// Outcome whose POVM element has (numerically) zero trace; no retrodicted
/// state exists for it.
class NullOutcome : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The prior ensemble assigns (numerically) zero probability to the outcome.
class UnreachableOutcome : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Conditional preparation with zero success probability.
class HeraldImpossible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fock truncation too small for the requested parameters.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace retro
