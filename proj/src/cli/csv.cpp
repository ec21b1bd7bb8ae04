#include "cli/csv.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace abcmc::cli {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : out_(path), columns_(header.size()) {
    if (!out_) throw std::runtime_error("cannot write " + path.string());
    for (const auto& h : header) *this << h;
    end_row();
}

CsvWriter& CsvWriter::operator<<(const std::string& field) {
    if (in_row_ > 0) out_ << ',';
    if (field.find_first_of(",\"\n") != std::string::npos) {
        out_ << '"';
        for (char c : field) out_ << (c == '"' ? "\"\"" : std::string(1, c));
        out_ << '"';
    } else {
        out_ << field;
    }
    ++in_row_;
    return *this;
}

void CsvWriter::end_row() {
    if (in_row_ != columns_)
        throw std::logic_error("CSV row has " + std::to_string(in_row_) + " fields, expected " +
                               std::to_string(columns_));
    out_ << '\n';
    in_row_ = 0;
}

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw std::out_of_range("CSV has no column " + name);
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(std::move(cur));
    return out;
}

}  // namespace

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    CsvTable table;
    std::string line;
    if (std::getline(in, line)) table.header = split_line(line);
    while (std::getline(in, line))
        if (!line.empty()) table.rows.push_back(split_line(line));
    return table;
}

}  // namespace abcmc::cli
