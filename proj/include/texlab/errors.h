// Copyright 2026 The texlab Authors
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

#ifndef TEXLAB_ERRORS_H_
#define TEXLAB_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace texlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Image or plane dimensions violate a precondition (odd size, too small).
class DimensionError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

// Tensor or layer shapes are incompatible.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Weights file does not describe the fixed classifier architecture.
class ModelError : public Error {
 public:
  using Error::Error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

// Robust motion fitting could not produce a usable affine model.
class NoModelError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t byte_offset)
      : Error(what + " at byte " + std::to_string(byte_offset)),
        byte_offset_(byte_offset) {}

  std::size_t byte_offset() const { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

}  // namespace texlab

#endif  // TEXLAB_ERRORS_H_
