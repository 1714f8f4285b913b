#include "smt/error.hpp"

namespace smt {

namespace {

std::string compose(ErrorKind kind, const std::string& message, const std::string& path) {
  std::string out(to_string(kind));
  if (!path.empty()) {
    out += " at ";
    out += path;
  }
  out += ": ";
  out += message;
  return out;
}

}  // namespace

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedContainer: return "MalformedContainer";
    case ErrorKind::UnsupportedEncoding: return "UnsupportedEncoding";
    case ErrorKind::SpanOutOfRange: return "SpanOutOfRange";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::EmptySegment: return "EmptySegment";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Error";
}

Error::Error(ErrorKind kind, std::string message, std::string path)
    : std::runtime_error(compose(kind, message, path)),
      kind_(kind),
      path_(std::move(path)),
      detail_(std::move(message)) {}

Error Error::with_prefix(std::string_view prefix, std::string_view separator) const {
  std::string joined(prefix);
  if (!path_.empty()) {
    if (path_.front() != '[') joined += separator;
    joined += path_;
  }
  return Error(kind_, detail_, std::move(joined));
}

}  // namespace smt
