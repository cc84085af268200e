#include "ztoa/csvio.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace ztoa {

CsvBuilder::CsvBuilder(std::vector<std::string> columns) : n_cols_(columns.size()) {
    body_ = "# schema=1\n";
    for (std::size_t i = 0; i < columns.size(); ++i) {
        body_ += columns[i];
        body_ += (i + 1 < columns.size()) ? ',' : '\n';
    }
}

std::string CsvBuilder::format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void CsvBuilder::row(const std::vector<double>& values) {
    if (values.size() != n_cols_) throw std::runtime_error("CsvBuilder: column count mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) {
        body_ += format_number(values[i]);
        body_ += (i + 1 < values.size()) ? ',' : '\n';
    }
}

void CsvBuilder::footer(const std::string& key, const std::string& value) {
    footer_ += "# " + key + "=" + value + "\n";
}

void CsvBuilder::footer(const std::string& key, double value) {
    footer(key, format_number(value));
}

std::string CsvBuilder::str() const {
    return body_ + footer_;
}

void CsvBuilder::write_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    const std::string s = str();
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace ztoa
