// Copyright 2026 The orgmatch Authors.
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

#ifndef ORGMATCH_ERROR_H_
#define ORGMATCH_ERROR_H_

#include <stdexcept>
#include <string>
#include <vector>

namespace orgmatch {

// Base class of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input could not be parsed. Carries the 1-based line (or record) number
// where parsing failed, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string &what, size_t line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  size_t line() const { return line_; }

 private:
  size_t line_;
};

// Referential or uniqueness violation (duplicate id, unknown id).
class IntegrityError : public Error {
 public:
  using Error::Error;
};

// A record parsed but violates its schema. Lists the offending fields.
class ValidationError : public Error {
 public:
  ValidationError(const std::string &what, std::vector<std::string> fields,
                  size_t line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        fields_(std::move(fields)),
        line_(line) {}
  const std::vector<std::string> &fields() const { return fields_; }
  size_t line() const { return line_; }

 private:
  std::vector<std::string> fields_;
  size_t line_;
};

// Caller passed an argument outside its documented range.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace orgmatch

#endif  // ORGMATCH_ERROR_H_
