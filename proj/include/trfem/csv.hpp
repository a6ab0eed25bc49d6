#pragma once

#include <string>

namespace trfem {

/// Decimal float with 9 significant digits, '.' separator.
std::string csv_num(double v);

}  // namespace trfem
