#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace vintage {

// Shortest round-trip decimal form of v ("%.17g", '.' decimal point,
// "-0" normalised away).
std::string csv_number(double v);

// Comma separated, LF line endings, no trailing whitespace. Identical
// inputs produce byte-identical files.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);

    void comment(const std::string& text); // "# text" line
    void row(const std::vector<std::string>& cells);
    void close();

private:
    std::ofstream out_;
    std::string path_;
};

std::string join_path(const std::string& dir, const std::string& name);
void ensure_directory(const std::string& dir);

} // namespace vintage
