//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef GADMOL_ERROR_HPP_
#define GADMOL_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gadmol {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Text-format errors carry the byte offset of the offending token.
class ParseError : public Error {
 public:
  ParseError(const std::string &what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class SyntaxError : public ParseError {
 public:
  using ParseError::ParseError;
};

class UnsupportedFeature : public ParseError {
 public:
  using ParseError::ParseError;
};

class KekulizationFailure : public Error {
 public:
  using Error::Error;
};

class UnencodableGraph : public Error {
 public:
  using Error::Error;
};

class EmptyReference : public Error {
 public:
  using Error::Error;
};

class NonFiniteLoss : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class TooFewPoints : public Error {
 public:
  using Error::Error;
};

class DegenerateData : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace gadmol

#endif  // GADMOL_ERROR_HPP_
