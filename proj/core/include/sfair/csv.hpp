#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace sfair {

struct CsvRow {
    std::size_t line = 0;  // 1-based line where the record starts
    std::vector<std::string> fields;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<CsvRow> rows;
};

// RFC 4180 reader: comma separated, double-quote quoting with "" escapes,
// quoted fields may span lines, CRLF or LF endings. A UTF-8 byte order mark
// is skipped and blank lines are ignored. Throws ParseError on an
// unterminated quote or stray characters after a closing quote.
CsvTable parse_csv(std::string_view text, std::string_view file_name);

// Throws ParseError (line 1) unless the header matches exactly.
void require_header(const CsvTable& table, std::initializer_list<std::string_view> expected,
                    std::string_view file_name);

std::string csv_escape(std::string_view field);

// Trims ASCII whitespace.
std::string_view trim(std::string_view text) noexcept;

}  // namespace sfair
