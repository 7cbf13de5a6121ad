#pragma once

#include <string>

namespace cz {

/// Shortest decimal form that round-trips a double (at most 17 significant digits).
std::string format_real(double v);

}  // namespace cz
