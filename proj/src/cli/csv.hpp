#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace abcmc::cli {

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_double(double v);

/// Minimal CSV writer. Fields are written as given; callers format numbers
/// through `format_double` so output is byte-reproducible.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

    CsvWriter& operator<<(const std::string& field);
    CsvWriter& operator<<(const char* field) { return *this << std::string(field); }
    CsvWriter& operator<<(double v) { return *this << format_double(v); }
    CsvWriter& operator<<(std::uint64_t v) { return *this << std::to_string(v); }
    CsvWriter& operator<<(int v) { return *this << std::to_string(v); }
    void end_row();

private:
    std::ofstream out_;
    std::size_t columns_;
    std::size_t in_row_ = 0;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Index of a header column; throws std::out_of_range when absent.
    std::size_t column(const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

}  // namespace abcmc::cli
