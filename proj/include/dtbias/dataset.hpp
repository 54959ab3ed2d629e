#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dtbias/errors.hpp"
#include "dtbias/sample.hpp"

namespace dtbias {

// Delimited text with a header row naming columns x, u, v (any order, case
// insensitive, extra columns ignored). Comma or tab, autodetected from the
// header. Empty fields and "NA" are missing values.
std::vector<RawRecord> read_dataset(const std::string& path);

std::vector<RawRecord> parse_dataset(std::istream& in);

}  // namespace dtbias
