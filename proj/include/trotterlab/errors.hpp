// Copyright 2026 The trotterlab Authors
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

#ifndef TROTTERLAB_ERRORS_HPP
#define TROTTERLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace trotterlab {

/// Base class of all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live on different Hilbert spaces.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Request exceeds the dense realization cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the function's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Input fails a structural requirement (e.g. not Hermitian).
class ValidityError : public Error {
 public:
  using Error::Error;
};

/// Iterative procedure did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Optimizer hit a non-finite objective or failed otherwise.
class OptimizationError : public Error {
 public:
  using Error::Error;
};

/// Gauge formula has a vanishing denominator.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Invalid graph or model construction request.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// Not enough data points for a fit.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// Unknown name in a registry.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// File could not be read, written or parsed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace trotterlab

#endif  // TROTTERLAB_ERRORS_HPP
