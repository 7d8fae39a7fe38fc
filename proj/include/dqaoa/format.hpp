#pragma once

#include <charconv>
#include <string>

namespace dqaoa {

/// Shortest decimal text that round-trips to the same double.
inline std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace dqaoa
