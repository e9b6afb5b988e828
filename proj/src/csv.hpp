#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace scbench::detail {

using CsvRow = std::vector<std::string>;

// RFC 4180 reader: quoted fields may hold commas, doubled quotes and newlines.
std::vector<CsvRow> read_csv(std::istream& in);

std::string csv_escape(std::string_view field);

}  // namespace scbench::detail
