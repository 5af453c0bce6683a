#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace crossmin {

// Base for all data-level failures (bad input, degenerate geometry, ...).
// The CLI maps these to exit code 2.
struct DataError : std::runtime_error {
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : DataError {
  ParseError(int line_, const std::string& what)
      : DataError("line " + std::to_string(line_) + ": " + what), line(line_) {}
  int line;
};

struct DegenerateDrawingError : DataError {
  using DataError::DataError;
};

struct DegenerateRotationError : DataError {
  using DataError::DataError;
};

struct SpurPresentError : DataError {
  explicit SpurPresentError(std::vector<std::string> vertices_)
      : DataError(make_message(vertices_)), vertices(std::move(vertices_)) {}
  std::vector<std::string> vertices;

 private:
  static std::string make_message(const std::vector<std::string>& vs) {
    std::string m = "map has spurs at:";
    for (const auto& v : vs) m += " " + v;
    return m;
  }
};

struct GuestNotCycleError : DataError {
  using DataError::DataError;
};

struct BudgetExceededError : DataError {
  using DataError::DataError;
};

// Internal invariant violations. The CLI maps these to exit code 70.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

inline void internal_check(bool cond, const char* what) {
  if (!cond) throw InternalError(what);
}

}  // namespace crossmin
