#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace simdef::csv {

// Splits one CSV line. Fields may be wrapped in double quotes; inside a
// quoted field, "" stands for a literal quote and commas are not separators.
std::vector<std::string> split_line(const std::string& line);

// Reads every non-blank line of the stream as one row. Strips a UTF-8 BOM
// on the first line and a trailing carriage return on every line.
std::vector<std::vector<std::string>> read_rows(std::istream& in);

std::vector<std::vector<std::string>> read_file(const std::string& path);

// Quotes the field only when it contains a comma, quote, or newline.
std::string encode_field(const std::string& field);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace simdef::csv
