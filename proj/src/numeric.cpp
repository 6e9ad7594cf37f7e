#include "diagasym/numeric.hpp"

#include <cstdio>

namespace diagasym {

std::string format_double(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace diagasym
