#pragma once

#include <array>
#include <charconv>
#include <string>

namespace ias {

/// Shortest decimal text that parses back to exactly the same double.
inline std::string format_double(double x) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

}  // namespace ias
