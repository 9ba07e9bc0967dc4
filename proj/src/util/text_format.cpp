/// @file text_format.cpp
/// @brief Shortest round-trip double formatting via std::to_chars.

#include "anse/text_format.hpp"

#include <charconv>

namespace anse {

std::string shortest_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace anse
