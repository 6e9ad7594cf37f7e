#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace diagasym {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised by the expression parser; `position` is a 0-based offset into the
// input text.
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position(position) {}
  std::size_t position;
};

// Raised by job-configuration loading; `field_path` points at the offending
// entry, e.g. "direction[0]".
struct ConfigError : Error {
  ConfigError(const std::string& field_path, const std::string& what)
      : Error(field_path + ": " + what), field_path(field_path) {}
  std::string field_path;
};

// A named hypothesis of the asymptotic method failed or could not be
// verified. `hypothesis` is a short stable identifier; the what() string is
// the human-readable explanation. The analysis pipeline converts these into
// report warnings instead of aborting.
struct HypothesisError : Error {
  HypothesisError(const std::string& hypothesis, const std::string& what)
      : Error(what), hypothesis(hypothesis) {}
  std::string hypothesis;
};

// File-system failures (missing config, unwritable output directory).
struct IoError : Error {
  using Error::Error;
};

}  // namespace diagasym
