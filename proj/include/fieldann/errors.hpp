// Copyright 2026-present the fieldann project
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

namespace fieldann {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Field counts of two operands disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A query whose weighted norm is zero (every field empty).
class DegenerateQueryError : public Error {
 public:
  using Error::Error;
};

// Out-of-range numeric parameter (K, k, theta, budget, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Operation not defined for this configuration, e.g. CellDec with s != 3.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// Raw records that cannot be turned into a corpus.
class IngestError : public Error {
 public:
  using Error::Error;
};

// Malformed corpus/index/report file.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Index built against a different vectorized corpus.
class FingerprintMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace fieldann
