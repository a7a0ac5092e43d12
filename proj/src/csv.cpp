#include "vintage/csv.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "vintage/errors.hpp"

namespace vintage {

std::string csv_number(double v) {
    if (v == 0.0)
        v = 0.0; // collapse negative zero
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path)
    : out_(path, std::ios::binary), path_(path) {
    if (!out_)
        throw InputError("cannot open output file: " + path);
}

void CsvWriter::comment(const std::string& text) {
    out_ << "# " << text << "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i)
            out_ << ',';
        out_ << cells[i];
    }
    out_ << "\n";
}

void CsvWriter::close() {
    out_.close();
    if (!out_)
        throw InputError("failed writing output file: " + path_);
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

void ensure_directory(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw InputError("cannot create output directory: " + dir);
}

} // namespace vintage
