// Copyright 2026 The qpanoise Authors
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

namespace qpanoise {

/// Raised when an argument violates an operation's precondition
/// (bad qubit index, theta outside the admissible range, f outside [0,1], ...).
class PreconditionError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Base for failures that only show up once the numbers are crunched.
class NumericalError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Coincidence probability vanished: every pair was discarded.
class ProtocolAborted : public NumericalError {
   public:
    explicit ProtocolAborted(double probability)
        : NumericalError("protocol aborted, all pairs discarded (coincidence probability " +
                         std::to_string(probability) + ")"),
          probability_(probability) {}
    double probability() const { return probability_; }

   private:
    double probability_;
};

class TargetUnreachable : public NumericalError {
   public:
    using NumericalError::NumericalError;
};

class RootNotBracketed : public NumericalError {
   public:
    using NumericalError::NumericalError;
};

class NonMonotoneResponse : public NumericalError {
   public:
    using NumericalError::NumericalError;
};

}  // namespace qpanoise
