#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gepc {

/// Base class for recoverable toolkit failures (bad input files, empty texts).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A malformed input file. Carries the file and the byte offset of the fault.
class ParseError : public Error {
 public:
  ParseError(std::string file, std::size_t offset, const std::string& message)
      : Error(file + ":" + std::to_string(offset) + ": " + message),
        file_(std::move(file)),
        offset_(offset) {}

  const std::string& file() const noexcept { return file_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::string file_;
  std::size_t offset_;
};

}  // namespace gepc
