// Copyright 2026 The Covering Authors
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

namespace covering {

// Base of every error raised by the library. Callers that only need to
// distinguish "bad input" from "no solution" can catch the subclasses.
class CoveringError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InfeasibleInstance : public CoveringError {
 public:
  using CoveringError::CoveringError;
};

class SizeLimitExceeded : public CoveringError {
 public:
  using CoveringError::CoveringError;
};

class BadParam : public CoveringError {
 public:
  using CoveringError::CoveringError;
};

class DimensionMismatch : public CoveringError {
 public:
  using CoveringError::CoveringError;
};

class NotConvex : public CoveringError {
 public:
  using CoveringError::CoveringError;
};

class NotInHemisphere : public CoveringError {
 public:
  using CoveringError::CoveringError;
};

class ZeroVolume : public CoveringError {
 public:
  using CoveringError::CoveringError;
};

class ParseError : public CoveringError {
 public:
  using CoveringError::CoveringError;
};

// Raised when a postcondition the library itself is responsible for fails.
class InvariantViolation : public CoveringError {
 public:
  using CoveringError::CoveringError;
};

}  // namespace covering
