/// @file text_format.hpp
/// @brief Locale-independent numeric formatting for run artifacts.

#ifndef ANSE_TEXT_FORMAT_HPP
#define ANSE_TEXT_FORMAT_HPP

#include <string>

namespace anse {

/// Shortest decimal string that round-trips to the same double (std::to_chars
/// general format). Used by every emitted artifact so reruns are
/// byte-identical across locales.
std::string shortest_double(double v);

}  // namespace anse

#endif  // ANSE_TEXT_FORMAT_HPP
