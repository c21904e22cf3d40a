#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// RFC 4180 CSV: quoted fields may contain commas, quotes (doubled) and
// newlines; CRLF and LF records both accepted.

namespace editguard::csv {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& msg)
        : std::runtime_error("csv line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

struct Row {
    std::vector<std::string> fields;
    int line = 0;  // 1-based line the record starts on
};

class Reader {
public:
    explicit Reader(std::string_view content) : content_(content) {}

    // Advances to the next record; returns false at end of input. Throws
    // ParseError on an unterminated quote or a stray quote mid-field.
    bool next(Row& row);

private:
    std::string_view content_;
    size_t pos_ = 0;
    int line_ = 1;
};

std::string escape(std::string_view field);
std::string format_row(const std::vector<std::string>& fields);

std::vector<Row> parse(std::string_view content);

}  // namespace editguard::csv
