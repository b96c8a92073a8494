#pragma once

#include <string>

namespace lupus {

/// Shortest decimal text that parses back to exactly `v`.
std::string format_real(double v);

/// Two-digit-mantissa scientific notation, e.g. 749.3 -> "7.49E+02".
std::string format_sci2(double v);

}  // namespace lupus
