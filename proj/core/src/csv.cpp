#include "sfair/csv.hpp"

#include <string>

#include "sfair/error.hpp"

namespace sfair {

std::string_view trim(std::string_view text) noexcept {
    constexpr std::string_view kSpace = " \t\r\n";
    const auto first = text.find_first_not_of(kSpace);
    if (first == std::string_view::npos) return {};
    const auto last = text.find_last_not_of(kSpace);
    return text.substr(first, last - first + 1);
}

CsvTable parse_csv(std::string_view text, std::string_view file_name) {
    if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

    std::vector<CsvRow> records;
    CsvRow current;
    std::string field;
    std::size_t line = 1;
    std::size_t record_line = 1;
    bool in_quotes = false;
    bool after_quote = false;
    bool record_has_content = false;

    auto end_field = [&] {
        current.fields.push_back(std::move(field));
        field.clear();
        after_quote = false;
    };
    auto end_record = [&] {
        end_field();
        const bool blank = !record_has_content && current.fields.size() == 1 &&
                           current.fields.front().empty();
        if (!blank) {
            current.line = record_line;
            records.push_back(std::move(current));
        }
        current = CsvRow{};
        record_has_content = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                    after_quote = true;
                }
            } else {
                if (c == '\n') ++line;
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                if (!field.empty() || after_quote) {
                    throw ParseError(std::string(file_name), line, "unexpected quote inside field");
                }
                in_quotes = true;
                record_has_content = true;
                break;
            case ',':
                record_has_content = true;
                end_field();
                break;
            case '\r':
                if (i + 1 < text.size() && text[i + 1] == '\n') break;
                [[fallthrough]];
            case '\n':
                end_record();
                ++line;
                record_line = line;
                break;
            default:
                if (after_quote) {
                    throw ParseError(std::string(file_name), line,
                                     "characters after closing quote");
                }
                field.push_back(c);
                record_has_content = true;
        }
    }
    if (in_quotes) throw ParseError(std::string(file_name), record_line, "unterminated quote");
    if (record_has_content || !field.empty() || !current.fields.empty()) end_record();

    CsvTable table;
    if (records.empty()) return table;
    table.header = std::move(records.front().fields);
    for (auto& h : table.header) h = std::string(trim(h));
    table.rows.assign(std::make_move_iterator(records.begin() + 1),
                      std::make_move_iterator(records.end()));
    return table;
}

void require_header(const CsvTable& table, std::initializer_list<std::string_view> expected,
                    std::string_view file_name) {
    std::string want;
    for (auto col : expected) {
        if (!want.empty()) want += ',';
        want += col;
    }
    std::string got;
    for (const auto& col : table.header) {
        if (!got.empty()) got += ',';
        got += col;
    }
    if (got != want) {
        throw ParseError(std::string(file_name), 1,
                         "header mismatch: expected '" + want + "', got '" + got + "'");
    }
}

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace sfair
