// Copyright 2026 The poisig Authors.
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

#ifndef POISIG_ERRORS_HPP_
#define POISIG_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace poisig {

// Base of every exception thrown by the core library. The C API maps each
// subclass onto one status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid model or pattern parameters.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Argument outside the domain of an otherwise valid object.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Quadrature failed to meet its tolerance. The best estimate is kept.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, double best_estimate, double error_estimate)
      : Error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

class CapacityError : public Error {
 public:
  using Error::Error;
};

// A fading draw produced a non-positive value.
class SamplingError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace poisig

#endif  // POISIG_ERRORS_HPP_
