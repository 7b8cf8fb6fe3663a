#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qsense {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Shortest round-trip decimal; locale-free, so equal configs give equal bytes.
std::string format_double(double v);
double parse_double(std::string_view s);  // strict; throws ConfigError
long long parse_int(std::string_view s);

// Flat key=value configuration with insertion-ordered emission. Accepted
// line forms:
//   key=value            plain entry
//   #cfg key=value       entry embedded in a CSV metadata header
//   # anything           comment
//   lines containing ',' data rows (ignored, lets a CSV artifact be re-read)
// Anything else is a ConfigError.
class ConfigMap {
public:
    void set(std::string key, std::string value);
    std::optional<std::string> get(std::string_view key) const;
    bool has(std::string_view key) const { return get(key).has_value(); }

    double get_double(std::string_view key, double fallback) const;
    std::string get_string(std::string_view key, std::string fallback) const;

    const std::vector<std::pair<std::string, std::string>>& items() const { return items_; }

    static ConfigMap parse_text(std::string_view text);
    static ConfigMap parse_file(const std::string& path);

private:
    std::vector<std::pair<std::string, std::string>> items_;
};

struct GridSpec {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t n = 0;
    bool logarithmic = true;

    std::vector<double> build() const;
    std::string str() const;
    // "lo:hi:n:log" or "lo:hi:n:lin"
    static GridSpec parse(std::string_view text);
};

// CSV artifact with a '#'-prefixed metadata block whose "#cfg" lines round-trip
// through ConfigMap::parse_*.
class CsvWriter {
public:
    explicit CsvWriter(const ConfigMap& resolved);
    void comment(std::string_view text);
    void columns(const std::vector<std::string>& names);
    void row(const std::vector<double>& values);
    void row_mixed(const std::vector<std::string>& cells);
    const std::string& str() const { return out_; }

private:
    std::string out_;
    std::size_t n_columns_ = 0;
};

void write_file(const std::string& path, std::string_view content);

}  // namespace qsense
