//
// Copyright 2026 The smoothsel Authors
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
//

#ifndef SMOOTHSEL_ERRORS_H_
#define SMOOTHSEL_ERRORS_H_

#include <stdexcept>
#include <string>

namespace smoothsel {

// Base class for every error raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A point or argument lies outside the domain an operation is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A domain is too large for exhaustive enumeration.
class SizeError : public Error {
 public:
  using Error::Error;
};

// A documented precondition (such as a beta ceiling) does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Inconsistent configuration, e.g. a threshold that leaves the high set empty.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

// A numeric parameter is out of range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A privacy budget split does not achieve the requested epsilon.
class BudgetError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace smoothsel

#endif  // SMOOTHSEL_ERRORS_H_
