#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace compolang {

// Base class for all errors raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid configuration values (sizes, fractions, dimensions, flags).
struct ConfigError : Error {
  using Error::Error;
};

// Malformed runtime input (bad token ids, empty sequences, ragged batches).
struct InputError : Error {
  using Error::Error;
};

// A symbol that does not exist in the world model.
struct InterpretError : Error {
  using Error::Error;
};

// A token outside the vocabulary.
struct EncodingError : Error {
  using Error::Error;
};

// Surface string rejected by the grammar; carries the offending position.
struct ParseError : Error {
  ParseError(std::size_t position, const std::string& what)
      : Error("parse error at position " + std::to_string(position) + ": " + what),
        position(position) {}
  std::size_t position;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace compolang
