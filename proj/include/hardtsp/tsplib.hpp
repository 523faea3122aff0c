#pragma once

#include <iosfwd>
#include <string>

#include "hardtsp/instance.hpp"

namespace hardtsp {

// TSPLIB TYPE:TSP reader. Supported edge weights: EXPLICIT with FULL_MATRIX,
// UPPER_ROW or LOWER_DIAG_ROW, and the EUC_2D / ATT / GEO coordinate kinds
// with their standard integer rounding rules. Anything else raises a parse
// error naming the offending keyword. All supported kinds produce integer
// instances.
TspInstance tsplib_parse(std::istream& in);
TspInstance tsplib_read(const std::string& path);

// Writes an integer instance as EDGE_WEIGHT_TYPE EXPLICIT / FULL_MATRIX.
// write-then-read is cost-exact.
void tsplib_write(const TspInstance& inst, std::ostream& out);
void tsplib_write(const TspInstance& inst, const std::string& path);

}  // namespace hardtsp
