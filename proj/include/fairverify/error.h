/*
 * Copyright 2026 The fairverify Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Exception types shared by every module. Anything thrown by the library
// derives from fairverify::Error, so front ends can catch a single type.

#ifndef FAIRVERIFY_ERROR_H_
#define FAIRVERIFY_ERROR_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fairverify {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed specification, model, predicate or bundle text. Line and column
// are 1-based; 0 means "unknown".
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error(FormatMessage(message, line, column)),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string FormatMessage(const std::string& message, int line,
                                   int column) {
    if (line <= 0) return message;
    return std::to_string(line) + ":" + std::to_string(column) + ": " +
           message;
  }

  int line_;
  int column_;
};

// A token that is not part of the specification grammar, e.g. `==` or `^`.
class UnknownOperator : public ParseError {
 public:
  using ParseError::ParseError;
};

class InvalidExpression : public Error {
 public:
  using Error::Error;
};

class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(const std::string& name)
      : Error("unbound variable '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class OutOfRangeSample : public Error {
 public:
  using Error::Error;
};

class InvalidDelta : public Error {
 public:
  using Error::Error;
};

class InvalidCount : public Error {
 public:
  using Error::Error;
};

// Distribution parameter outside its domain (bernoulli p, gaussian stddev...).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class NoMediatorBlock : public Error {
 public:
  using Error::Error;
};

// Conditioning predicate never held within the attempt budget.
class RejectionExhausted : public Error {
 public:
  explicit RejectionExhausted(std::uint64_t attempts)
      : Error("rejection sampling exhausted after " + std::to_string(attempts) +
              " attempts"),
        attempts_(attempts) {}
  std::uint64_t attempts() const { return attempts_; }

 private:
  std::uint64_t attempts_;
};

class MissingFeature : public Error {
 public:
  using Error::Error;
};

class ExternalProtocolError : public Error {
 public:
  using Error::Error;
};

class EmptyMinoritySet : public Error {
 public:
  using Error::Error;
};

class InvalidLambda : public Error {
 public:
  using Error::Error;
};

class UnsupportedContinuousPrimitive : public Error {
 public:
  using Error::Error;
};

class UnsupportedShape : public Error {
 public:
  using Error::Error;
};

class ZeroConditionProbability : public Error {
 public:
  using Error::Error;
};

// Bad verifier configuration or problem bundle.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace fairverify

#endif  // FAIRVERIFY_ERROR_H_
