#ifndef VQST_FORMAT_HPP
#define VQST_FORMAT_HPP

// Reproducible text output: every number is printed with 12 significant digits.

#include <string>
#include <vector>

#include <json.hpp>

namespace vqst {

using json = nlohmann::ordered_json;

/// "%.12g"; non-finite values print as nan / inf / -inf.
std::string fmt12(double x);

/// x rounded to 12 significant digits (null for non-finite values).
json num12(double x);

/// Minimal RFC-4180 CSV table with a mandatory header.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);
    void add_row(std::vector<std::string> row);
    std::string str() const;
    std::size_t rows() const { return rows_.size(); }

private:
    static std::string quote(const std::string& s);
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Writes `text` to `path`, or to stdout when path is empty or "-".
void write_output(const std::string& path, const std::string& text);

} // namespace vqst

#endif
