#pragma once

#include <stdexcept>
#include <string>

namespace limgreedy {

// Malformed arguments: unknown elements, empty strategy sets, bad parameters.
class invalid_input : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Graph construction failures (cycles, self-loops, duplicate edges).
class invalid_graph : public invalid_input {
 public:
  using invalid_input::invalid_input;
};

// An exhaustive routine was asked to work above its size guard or search
// budget. Callers may retry with an explicitly raised guard.
class size_guard_exceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace limgreedy
