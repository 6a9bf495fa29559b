/* Copyright 2026 The tileselect Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef TILESELECT_ERRORS_HPP_
#define TILESELECT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace tileselect {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed hardware profile text.
class ProfileParseError : public Error {
 public:
  using Error::Error;
};

// Well-formed profile that violates an invariant.
class ProfileValidationError : public Error {
 public:
  using Error::Error;
};

class UnsupportedDtypeError : public Error {
 public:
  explicit UnsupportedDtypeError(const std::string& dtype)
      : Error("dtype unsupported by hardware profile: " + dtype) {}
};

class InvalidProblemError : public Error {
 public:
  using Error::Error;
};

// A tile configuration that cannot run on the profile.
class InfeasibleConfigError : public Error {
 public:
  using Error::Error;
};

// Even the smallest tile does not fit; the profile is likely miscalibrated.
class EmptyCandidateSetError : public Error {
 public:
  using Error::Error;
};

}  // namespace tileselect

#endif  // TILESELECT_ERRORS_HPP_
