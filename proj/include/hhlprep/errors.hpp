// Copyright 2026 The hhlprep Authors
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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hhlprep {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A register layout needs more qubits than the simulator cap allows.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Qubit or register index outside the state.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// Malformed input value (non-unitary gate, non-normalized vector, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Control qubit lies inside the register acted upon.
class OverlapError : public Error {
 public:
  using Error::Error;
};

/// Post-selection on an outcome whose probability is numerically zero.
class ImpossibleOutcomeError : public Error {
 public:
  using Error::Error;
};

/// Operands of different dimension.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A diagonal propagator was requested for a vector with complex entries.
class MustEmbedError : public Error {
 public:
  using Error::Error;
};

/// A register is not in the state an operation requires (e.g. clock not zeroed).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A controlled rotation would need an ancilla amplitude outside [-1, 1].
class RotationDomainError : public Error {
 public:
  using Error::Error;
};

/// Scaled eigenvalues do not fit the signed clock range.
class AliasingError : public Error {
 public:
  AliasingError(const std::string& what, double suggested_t)
      : Error(what), suggested_t_(suggested_t) {}
  double suggested_t() const noexcept { return suggested_t_; }

 private:
  double suggested_t_;
};

/// Repeat-until-success post-selection ran out of attempts.
class AttemptsExhaustedError : public Error {
 public:
  AttemptsExhaustedError(const std::string& what, std::uint64_t failures)
      : Error(what), failures_(failures) {}
  std::uint64_t failures() const noexcept { return failures_; }

 private:
  std::uint64_t failures_;
};

class SingularSystemError : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input (trace, vector file, system file, sweep spec).
class FormatError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace hhlprep
