#pragma once

#include <stdexcept>
#include <string>

namespace backbone {

// Exit-code taxonomy used by the CLI: 0 ok, 2 usage, 3 infeasible,
// 4 planner timeout, 5 I/O (file parse / validation / filesystem).

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

struct InfeasibleError : std::runtime_error {
  explicit InfeasibleError(const std::string& msg) : std::runtime_error(msg) {}
};

struct InsufficientRobotsError : InfeasibleError {
  explicit InsufficientRobotsError(const std::string& msg) : InfeasibleError(msg) {}
};

struct PlannerTimeoutError : std::runtime_error {
  explicit PlannerTimeoutError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace backbone
