#include "phasebell/format.hpp"

#include <array>
#include <charconv>

namespace phasebell {

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;  // no "-0"
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

std::string format_bool(bool value) { return value ? "true" : "false"; }

}  // namespace phasebell
