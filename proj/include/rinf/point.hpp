#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace rinf {

// A point (ray, height) of the set {1..n} x N, heights starting at 1.
struct Point {
  int ray = 1;
  std::int64_t height = 1;

  friend auto operator<=>(const Point&, const Point&) = default;

  std::string str() const {
    return "(" + std::to_string(ray) + "," + std::to_string(height) + ")";
  }
};

struct IncomparableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedCycleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rinf
