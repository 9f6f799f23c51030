#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace prospan {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A multiplication table that fails a group axiom; the message names the
/// axiom and a witness.
class NotAGroup : public Error {
 public:
  using Error::Error;
};

class NotNormal : public Error {
 public:
  using Error::Error;
};

class NotPrime : public Error {
 public:
  using Error::Error;
};

/// Two objects live over different groups.
class GroupMismatch : public Error {
 public:
  using Error::Error;
};

/// Span endpoints that do not line up for composition.
class ObjectMismatch : public Error {
 public:
  using Error::Error;
};

class NotLeftExact : public Error {
 public:
  using Error::Error;
};

class IncoherentFamily : public Error {
 public:
  using Error::Error;
};

/// Malformed values handed to a constructor (bad action table, bad matrix
/// shape, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::string file, std::size_t line, const std::string& msg)
      : Error(file + ":" + std::to_string(line) + ": " + msg),
        file_(std::move(file)),
        line_(line) {}

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

/// Outcome of a decision procedure: either yes, or no together with a
/// human-readable witness.
struct Verdict {
  bool ok = true;
  std::string witness;

  static Verdict yes() { return {}; }
  static Verdict no(std::string why) { return {false, std::move(why)}; }

  explicit operator bool() const noexcept { return ok; }
};

}  // namespace prospan
