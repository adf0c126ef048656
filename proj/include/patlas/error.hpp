#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace patlas {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input at a known line of a line-oriented file.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::string reason)
      : Error(reason + ", line " + std::to_string(line)),
        line_(line),
        reason_(std::move(reason)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

class DuplicateIdError : public Error {
 public:
  explicit DuplicateIdError(std::string id)
      : Error("duplicate patent id " + id), id_(std::move(id)) {}

  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

// Settings that cannot be honoured (bad config file, bad flag values).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace patlas
