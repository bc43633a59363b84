#include "qcd/csv_format.hpp"

#include <charconv>

namespace qcd::csv {

std::string number(double value) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, end);
}

}  // namespace qcd::csv
