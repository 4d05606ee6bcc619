#pragma once

#include <string>

namespace growth {

// Shortest round-trip decimal form; -infinity is written as "-inf".
std::string format_double(double value);

}  // namespace growth
