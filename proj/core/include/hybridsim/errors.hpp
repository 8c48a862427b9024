// Copyright 2026 The hybridsim Authors
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

#ifndef HYBRIDSIM_ERRORS_HPP_
#define HYBRIDSIM_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace hybridsim {

// Base of every error thrown by the library. The CLI maps subclasses onto
// process exit codes, so each class corresponds to one failure category.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numeric argument or option is outside its documented domain.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

enum class ParseErrorKind {
  kBadMagic,
  kBadHeader,
  kTruncatedPayload,
  kBadValue,
  kSchema,
};

class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, const std::string& what)
      : Error(what), kind_(kind) {}
  ParseErrorKind kind() const noexcept { return kind_; }

 private:
  ParseErrorKind kind_;
};

// Well-formed input that describes an impossible configuration, e.g. an
// affinity for a device kind that does not exist.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class NoLesionError : public Error {
 public:
  using Error::Error;
};

class SizeLimitError : public Error {
 public:
  using Error::Error;
};

// A caller-supplied callback broke its documented contract (for example a
// set function that is not monotone).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// An internal invariant failed; always a bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace hybridsim

#endif  // HYBRIDSIM_ERRORS_HPP_
