#pragma once

#include <string>

namespace satcov {

// Floating-point cell at 17 significant digits (round-trippable double).
std::string csv_double(double v);

}  // namespace satcov
