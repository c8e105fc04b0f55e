#pragma once

#include <stdexcept>
#include <string>

namespace backbone {

// Caller handed us something outside an operation's contract.
struct precondition_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A guarantee the algorithms themselves promise was observed broken.
// These must never fire on any input that passed precondition checks;
// one firing means a bug, not a bad input.
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

// Malformed input text (graph files, certificate files).
struct parse_error : std::runtime_error {
  parse_error(int line_arg, const std::string& what_arg)
      : std::runtime_error("line " + std::to_string(line_arg) + ": " + what_arg),
        line(line_arg) {}
  int line;
};

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw precondition_error(msg);
}

inline void ensure(bool ok, const std::string& msg) {
  if (!ok) throw internal_error(msg);
}

}  // namespace backbone
