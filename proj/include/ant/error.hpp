// Copyright 2026 The ANT Authors. All Rights Reserved.
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

#ifndef ANT_ERROR_HPP_
#define ANT_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace ant {

// Every failure the library raises derives from Error. The CLI maps each
// subclass to its own exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Caller broke a documented precondition (e.g. negative data for an
// unsigned type).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Bad input data: non-finite values, shape mismatches.
class InputError : public Error {
 public:
  using Error::Error;
};

// Malformed file header or payload.
class FormatError : public Error {
 public:
  using Error::Error;
};

// File missing or unreadable.
class IoError : public Error {
 public:
  using Error::Error;
};

// Invalid simulator / pipeline configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A value did not fit the modeled PE datapath under a strict policy.
class DatapathError : public Error {
 public:
  using Error::Error;
};

}  // namespace ant

#endif  // ANT_ERROR_HPP_
