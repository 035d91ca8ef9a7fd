#pragma once

#include <string>

namespace phasebell {

/// Shortest-safe CSV rendering: 17 significant digits, '.' decimal point,
/// independent of the C locale.
std::string format_number(double value);

std::string format_bool(bool value);

}  // namespace phasebell
