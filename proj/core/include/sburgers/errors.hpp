#pragma once

#include <stdexcept>
#include <string>

namespace sburgers {

/// Invalid argument to a numerical operation (bad exponent, negative time, ...).
class ArgumentError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Operation not defined in the requested spatial dimension.
class DimensionError : public ArgumentError {
public:
  using ArgumentError::ArgumentError;
};

/// A state became NaN/Inf during time stepping; carries the step time.
class OverflowError : public std::runtime_error {
public:
  OverflowError(const std::string& what, double time)
      : std::runtime_error(what), time_(time) {}
  double time() const { return time_; }

private:
  double time_;
};

/// An exact-solution oracle detected that it cannot produce a trustworthy
/// answer (e.g. log of a nonpositive value after under-resolved transport).
class OracleError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed binary snapshot; carries the byte offset of the problem.
class FormatError : public std::runtime_error {
public:
  FormatError(const std::string& what, std::size_t byte_offset)
      : std::runtime_error(what + " (byte offset " + std::to_string(byte_offset) + ")"),
        byte_offset_(byte_offset) {}
  std::size_t byte_offset() const { return byte_offset_; }

private:
  std::size_t byte_offset_;
};

/// Config file rejected; carries line number (0 = semantic, not tied to a line)
/// and the dotted key path of the offending field.
class ConfigError : public std::runtime_error {
public:
  ConfigError(const std::string& what, int line = 0, std::string field = {})
      : std::runtime_error(make_what(what, line, field)),
        line_(line),
        field_(std::move(field)) {}
  int line() const { return line_; }
  const std::string& field() const { return field_; }

private:
  static std::string make_what(const std::string& what, int line, const std::string& field) {
    std::string s;
    if (!field.empty()) s += field + ": ";
    s += what;
    if (line > 0) s += " (line " + std::to_string(line) + ")";
    return s;
  }
  int line_;
  std::string field_;
};

}  // namespace sburgers
