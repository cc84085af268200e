#pragma once

#include <string>
#include <vector>

namespace ztoa {

/// CSV emitter: first line `# schema=1`, then the column header, data rows
/// at full round-trip precision (17 significant digits), then `# key=value`
/// footer lines.  The body is built in memory and written in one shot.
class CsvBuilder {
public:
    explicit CsvBuilder(std::vector<std::string> columns);

    void row(const std::vector<double>& values);
    void footer(const std::string& key, const std::string& value);
    void footer(const std::string& key, double value);

    std::string str() const;
    /// Writes atomically (whole body at once); throws std::runtime_error on I/O failure.
    void write_file(const std::string& path) const;

    static std::string format_number(double v);

private:
    std::size_t n_cols_;
    std::string body_;
    std::string footer_;
};

} // namespace ztoa
