#pragma once

#include <stdexcept>
#include <string>

namespace tropic {

// Input violates a documented precondition (bad index, malformed structure,
// decomposition that does not belong to the graph, ...).
struct invalid_input : std::runtime_error {
  explicit invalid_input(const std::string& what) : std::runtime_error(what) {}
};

// Instance exceeds a configured cap of an exact (exponential) routine.
struct size_error : std::runtime_error {
  explicit size_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed text input.
struct parse_error : std::runtime_error {
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// A randomized generator exhausted its retry budget.
struct generation_error : std::runtime_error {
  explicit generation_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tropic
