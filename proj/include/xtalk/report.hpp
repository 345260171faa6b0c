#pragma once

#include <map>
#include <string>
#include <vector>

namespace xtalk {

inline constexpr const char* kVersion = "0.1.0";

// Writes via a temp file and atomic rename, so failed runs never leave
// partial outputs behind.
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

// Fixed-precision formatting used by every report writer, so outputs stay
// byte-identical across runs.
std::string format_double(double value, int precision);

struct CsvWriter {
    std::string buffer;

    void row(const std::vector<std::string>& cells);
    void write(const std::string& path) const { write_file_atomic(path, buffer); }
};

}  // namespace xtalk
