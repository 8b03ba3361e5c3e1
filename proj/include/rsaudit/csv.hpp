#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace rsaudit::csv {

struct Row {
    std::vector<std::string> fields;
    std::size_t line = 0;  ///< 1-based physical line the record starts on
};

struct Table {
    std::vector<std::string> header;
    std::vector<Row> rows;
};

/// Reads RFC 4180 text: quoted fields, doubled quotes, embedded line breaks, CRLF or LF.
/// A leading UTF-8 byte-order mark is dropped. Blank lines are skipped. Rows whose field
/// count differs from the header raise ParseError with the offending line.
[[nodiscard]] Table read(std::istream &in, char delimiter = ',');

[[nodiscard]] std::string quote(std::string_view field, char delimiter = ',');

void write_row(std::ostream &out, const std::vector<std::string> &fields, char delimiter = ',');

}  // namespace rsaudit::csv
