#include "univip/error.hpp"

namespace univip {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::InvalidConfiguration: return "invalid-configuration";
    case ErrorKind::DegenerateFusion: return "degenerate-fusion";
    case ErrorKind::DegenerateInput: return "degenerate-input";
    case ErrorKind::FileMissing: return "file-missing";
    case ErrorKind::MalformedHeader: return "malformed-header";
    case ErrorKind::UnsupportedFormat: return "unsupported-format";
    case ErrorKind::WrongMagic: return "wrong-magic";
    case ErrorKind::TruncatedPayload: return "truncated-payload";
    case ErrorKind::IoFailure: return "io-failure";
  }
  return "unknown";
}

bool is_io_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::FileMissing:
    case ErrorKind::MalformedHeader:
    case ErrorKind::UnsupportedFormat:
    case ErrorKind::WrongMagic:
    case ErrorKind::TruncatedPayload:
    case ErrorKind::IoFailure:
      return true;
    default:
      return false;
  }
}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace univip
