// Copyright 2026 The RLE Authors. All Rights Reserved.
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

namespace rle {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A hyper-parameter or argument is outside its valid range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Tensor shapes or channel counts do not match what an operation needs.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A configuration, scene or manifest file could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A parsed configuration violates a field invariant. `field()` names it.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// File system or codec failure.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace rle
