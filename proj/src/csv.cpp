#include "rsaudit/csv.hpp"

#include "rsaudit/error.hpp"

#include <iterator>

namespace rsaudit::csv {

namespace {

class Reader {
  public:
    Reader(std::istream &in, char delimiter) : text_(std::istreambuf_iterator<char>(in), {}), delim_(delimiter) {
        if (text_.rfind("\xEF\xBB\xBF", 0) == 0) {
            pos_ = 3;
        }
    }

    // Returns false at end of input.
    bool next(Row &row) {
        row.fields.clear();
        while (pos_ < text_.size() && (text_[pos_] == '\n' || text_[pos_] == '\r')) {
            consume_newline();
        }
        if (pos_ >= text_.size()) {
            return false;
        }
        row.line = line_;
        std::string field;
        bool quoted = false;
        bool after_quote = false;
        while (true) {
            if (pos_ >= text_.size()) {
                if (quoted) {
                    throw ParseError("unterminated quoted field", row.line);
                }
                row.fields.push_back(std::move(field));
                return true;
            }
            const char c = text_[pos_];
            if (quoted) {
                if (c == '"') {
                    if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '"') {
                        field += '"';
                        pos_ += 2;
                    } else {
                        quoted = false;
                        after_quote = true;
                        ++pos_;
                    }
                } else {
                    if (c == '\n') {
                        ++line_;
                    }
                    field += c;
                    ++pos_;
                }
                continue;
            }
            if (c == delim_) {
                row.fields.push_back(std::move(field));
                field.clear();
                after_quote = false;
                ++pos_;
            } else if (c == '\n' || c == '\r') {
                consume_newline();
                row.fields.push_back(std::move(field));
                return true;
            } else if (c == '"' && field.empty() && !after_quote) {
                quoted = true;
                ++pos_;
            } else if (after_quote) {
                throw ParseError("unexpected character after closing quote", line_);
            } else {
                field += c;
                ++pos_;
            }
        }
    }

  private:
    void consume_newline() {
        if (text_[pos_] == '\r' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '\n') {
            ++pos_;
        }
        ++pos_;
        ++line_;
    }

    std::string text_;
    char delim_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
};

}  // namespace

Table read(std::istream &in, char delimiter) {
    Reader reader(in, delimiter);
    Table table;
    Row row;
    if (!reader.next(row)) {
        throw ParseError("missing header row", 1);
    }
    table.header = std::move(row.fields);
    while (reader.next(row)) {
        if (row.fields.size() != table.header.size()) {
            throw ParseError("expected " + std::to_string(table.header.size()) + " fields, found " + std::to_string(row.fields.size()),
                             row.line);
        }
        table.rows.push_back(row);
    }
    return table;
}

std::string quote(std::string_view field, char delimiter) {
    if (field.find_first_of(std::string{'"', '\n', '\r', delimiter}) == std::string_view::npos) {
        return std::string(field);
    }
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

void write_row(std::ostream &out, const std::vector<std::string> &fields, char delimiter) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i != 0) {
            out << delimiter;
        }
        out << quote(fields[i], delimiter);
    }
    out << '\n';
}

}  // namespace rsaudit::csv
