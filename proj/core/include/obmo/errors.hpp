#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace obmo {

// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input. `line()` is 1-based; 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class MissingCameraError : public Error {
 public:
  using Error::Error;
};

class InvalidIntrinsicsError : public Error {
 public:
  using Error::Error;
};

// A point or box corner with non-positive depth.
class BehindCameraError : public Error {
 public:
  using Error::Error;
};

// A label that cannot be augmented; the frame continues without it.
class SkipError : public Error {
 public:
  using Error::Error;
};

// Caller broke a documented precondition (invalid config, unfiltered label).
class ContractError : public Error {
 public:
  using Error::Error;
};

class UndefinedApError : public Error {
 public:
  using Error::Error;
};

class PathError : public Error {
 public:
  using Error::Error;
};

// Detection and ground-truth directories disagree on the frame set.
class FrameMismatchError : public Error {
 public:
  FrameMismatchError(const std::string& what, std::vector<std::string> frames)
      : Error(what), frames_(std::move(frames)) {}
  const std::vector<std::string>& frames() const noexcept { return frames_; }

 private:
  std::vector<std::string> frames_;
};

}  // namespace obmo
