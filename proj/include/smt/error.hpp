#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace smt {

enum class ErrorKind {
  MalformedContainer,
  UnsupportedEncoding,
  SpanOutOfRange,
  SchemaError,
  ValidationError,
  EmptySegment,
  EmptyInput,
  LengthMismatch,
  OutOfRange,
  ConfigError,
  IoError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure in the library is reported through this type. `path()` is a
/// machine-readable location such as "utterances[0].words[2].syllables[1].end"
/// (empty when the error is not tied to a document position).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, std::string path = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& path() const noexcept { return path_; }
  const std::string& detail() const noexcept { return detail_; }

  /// Returns a copy whose path is `prefix` joined in front of the current
  /// path. Index paths ("[3].end") attach without a separator.
  Error with_prefix(std::string_view prefix, std::string_view separator = ".") const;

 private:
  ErrorKind kind_;
  std::string path_;
  std::string detail_;
};

}  // namespace smt
