// Copyright 2026 The pinchcert Authors
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

namespace pinchcert {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A curvature point violates strict convexity or finiteness.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A composed expression cannot be evaluated at the requested point.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// Two summands of a composed expression have different homogeneity degrees.
class NonHomogeneousError : public Error {
 public:
  using Error::Error;
};

/// The critical-point hyperplane is undefined because grad w is (numerically) zero.
class GradientTooSmall : public Error {
 public:
  using Error::Error;
};

/// No sampled point fell inside the region being scanned.
class EmptyRegion : public Error {
 public:
  using Error::Error;
};

class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

/// Bad user-facing parameter: unknown name, negative threshold, etc.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace pinchcert
