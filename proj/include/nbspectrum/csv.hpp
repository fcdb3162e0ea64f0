#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace nbspectrum {

/// Minimal RFC-4180 reader: quoted fields, "" escapes, \r\n tolerated.
/// Returns rows of fields; a trailing newline does not produce an empty row.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

/// Quote a field when it contains a comma, quote, or newline.
std::string csv_escape(std::string_view field);

}  // namespace nbspectrum
