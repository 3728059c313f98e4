#include "gridplan/csv.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gridplan/errors.hpp"

namespace gridplan {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

CsvReader::CsvReader(const std::string& path, const std::vector<std::string>& expected_header)
    : path_(path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open CSV file '" + path + "'");
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines_.push_back(line);
    }
    if (lines_.empty()) throw ParseError(path + ": empty file, expected a header row");
    auto header = split_csv_line(lines_[0]);
    if (header != expected_header) {
        std::string want;
        for (std::size_t i = 0; i < expected_header.size(); ++i)
            want += (i ? "," : "") + expected_header[i];
        throw ParseError(path + ": bad header '" + lines_[0] + "', expected '" + want + "'");
    }
    n_cols_ = expected_header.size();
    pos_ = 1;
}

bool CsvReader::next(std::vector<std::string>& fields) {
    while (pos_ < lines_.size() && lines_[pos_].empty()) ++pos_;
    if (pos_ >= lines_.size()) return false;
    fields = split_csv_line(lines_[pos_]);
    row_ = static_cast<int>(pos_) + 1;
    ++pos_;
    if (fields.size() != n_cols_) {
        std::ostringstream os;
        os << path_ << ":" << row_ << ": expected " << n_cols_ << " fields, got "
           << fields.size();
        throw ParseError(os.str());
    }
    return true;
}

double parse_double(const std::string& field, const std::string& context) {
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(field.c_str(), &end);
    if (end == field.c_str() || *end != '\0' || errno == ERANGE)
        throw ParseError(context + ": bad number '" + field + "'");
    return v;
}

long parse_long(const std::string& field, const std::string& context) {
    errno = 0;
    char* end = nullptr;
    long v = std::strtol(field.c_str(), &end, 10);
    if (end == field.c_str() || *end != '\0' || errno == ERANGE)
        throw ParseError(context + ": bad integer '" + field + "'");
    return v;
}

std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ParseError("cannot open '" + tmp + "' for writing");
        out << content;
        if (!out.flush()) throw ParseError("write failed for '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw ParseError("rename failed for '" + path + "'");
}

}  // namespace gridplan
