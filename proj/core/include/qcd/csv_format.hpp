#pragma once

#include <string>

namespace qcd::csv {

/// Shortest decimal text that round-trips the double exactly.
std::string number(double value);

}  // namespace qcd::csv
