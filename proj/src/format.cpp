#include "growth/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace growth {

std::string format_double(double value) {
  if (std::isinf(value)) return value < 0 ? "-inf" : "inf";
  if (std::isnan(value)) return "nan";
  if (value == 0.0) value = 0.0;  // fold -0
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), end);
}

}  // namespace growth
