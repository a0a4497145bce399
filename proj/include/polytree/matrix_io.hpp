#pragma once

#include <string>
#include <string_view>

#include "polytree/matrix.hpp"

namespace polytree {

// Headerless CSV, one sample per row. Throws ParseError on ragged rows or
// non-numeric fields.
DataMatrix parse_data_csv(std::string_view text);
std::string format_data_csv(const DataMatrix& data);

enum class PrecisionLayout { dense, triplets };

// Dense rows, or `i,j,value` lines for the nonzero entries in row-major order.
std::string format_precision(const PrecisionMatrix& theta, PrecisionLayout layout);

}  // namespace polytree
