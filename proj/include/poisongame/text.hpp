#pragma once

#include <charconv>
#include <string>

namespace poisongame {

/// Shortest round-trip decimal form, independent of the C locale.
inline std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

}  // namespace poisongame
