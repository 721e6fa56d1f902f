#pragma once

#include <stdexcept>
#include <string>

namespace rbw {

enum class ErrorKind {
  Parameter,     // invalid construction or call parameters
  Domain,        // argument does not live in the expected host
  Totality,      // coloring does not cover every edge
  Properness,    // two incident edges share a color
  Inapplicable,  // operation precondition structurally unmet
  Resource,      // enumeration or search budget exceeded
  GadgetState,   // gadget coloring does not satisfy the procedure's precondition
  Structure,     // malformed component structure
  Format,        // unparsable text input
  Degenerate,    // experiment produced no decided trials
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + " error: " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace rbw
