#pragma once

#include <string>
#include <vector>

namespace gridplan {

// Minimal CSV support for the project's fixed schemas: comma separated, no
// quoting, one header row.  Errors carry 1-based row numbers.
class CsvReader {
public:
    // Opens the file and checks the header against `expected_header`
    // (exact column names, exact order).
    CsvReader(const std::string& path, const std::vector<std::string>& expected_header);

    // Reads the next data row into `fields`; returns false at end of file.
    // Throws ParseError when the field count does not match the header.
    bool next(std::vector<std::string>& fields);

    int row_number() const { return row_; }
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::vector<std::string> lines_;
    std::size_t pos_ = 0;
    std::size_t n_cols_ = 0;
    int row_ = 1;
};

std::vector<std::string> split_csv_line(const std::string& line);

// strtod-based; throws ParseError naming `context` on garbage or trailing text.
double parse_double(const std::string& field, const std::string& context);
long parse_long(const std::string& field, const std::string& context);

// Shortest round-trip decimal form (std::to_chars), locale independent.
std::string format_double(double v);

// Atomic file write: write to <path>.tmp then rename over <path>.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace gridplan
