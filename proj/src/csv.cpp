#include "trfem/csv.hpp"

#include <cstdio>

namespace trfem {

std::string csv_num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace trfem
