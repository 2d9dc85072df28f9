#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace univip {

enum class ErrorKind {
  InvalidInput,
  InvalidConfiguration,
  DegenerateFusion,
  DegenerateInput,
  FileMissing,
  MalformedHeader,
  UnsupportedFormat,
  WrongMagic,
  TruncatedPayload,
  IoFailure,
};

std::string_view to_string(ErrorKind kind);

/// True for the error kinds raised by file readers and writers.
bool is_io_error(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Fusion denominator vanished at a pixel that was not flagged unfillable.
class DegenerateFusionError : public Error {
 public:
  DegenerateFusionError(int x, int y, const std::string& what)
      : Error(ErrorKind::DegenerateFusion, what), x_(x), y_(y) {}

  int x() const noexcept { return x_; }
  int y() const noexcept { return y_; }

 private:
  int x_;
  int y_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace univip
