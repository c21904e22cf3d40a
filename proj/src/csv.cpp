#include "editguard/csv.hpp"

namespace editguard::csv {

bool Reader::next(Row& row) {
    if (pos_ >= content_.size()) return false;
    row.fields.clear();
    row.line = line_;
    std::string field;
    bool quoted = false;
    for (;;) {
        if (pos_ >= content_.size()) {
            if (quoted) throw ParseError(row.line, "unterminated quoted field");
            row.fields.push_back(std::move(field));
            return true;
        }
        const char c = content_[pos_++];
        if (quoted) {
            if (c == '"') {
                if (pos_ < content_.size() && content_[pos_] == '"') {
                    field.push_back('"');
                    ++pos_;
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') ++line_;
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case ',':
                row.fields.push_back(std::move(field));
                field.clear();
                break;
            case '\r':
                if (pos_ < content_.size() && content_[pos_] == '\n') ++pos_;
                [[fallthrough]];
            case '\n':
                ++line_;
                row.fields.push_back(std::move(field));
                return true;
            case '"':
                if (!field.empty()) throw ParseError(line_, "quote inside unquoted field");
                quoted = true;
                break;
            default:
                field.push_back(c);
        }
    }
}

std::string escape(std::string_view field) {
    const bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string format_row(const std::vector<std::string>& fields) {
    std::string out;
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out.push_back(',');
        out += escape(fields[i]);
    }
    out.push_back('\n');
    return out;
}

std::vector<Row> parse(std::string_view content) {
    Reader reader(content);
    std::vector<Row> rows;
    Row row;
    while (reader.next(row)) rows.push_back(row);
    return rows;
}

}  // namespace editguard::csv
