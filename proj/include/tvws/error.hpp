#pragma once

#include <stdexcept>
#include <string>

namespace tvws {

/// Base of every exception thrown by the engine.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input (plan files, grid references, CSV rows, raster headers).
class ParseError : public Error {
public:
  using Error::Error;
};

/// Argument outside the domain of an operation (channel 70, negative power, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Well-formed input that is inconsistent (duplicate ids, missing disk, empty raster).
class DataError : public Error {
public:
  using Error::Error;
};

/// File could not be opened or written.
class IoError : public Error {
public:
  using Error::Error;
};

/// An internal postcondition failed.
class InvariantError : public Error {
public:
  using Error::Error;
};

} // namespace tvws
