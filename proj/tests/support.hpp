#pragma once

#include <functional>
#include <string>

#include "morreylab/grid.hpp"

// Message of the Error thrown by fn, or "" when nothing is thrown.
inline std::string error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const morreylab::Error& e) {
    return e.what();
  }
  return {};
}

inline bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}
