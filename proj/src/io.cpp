#include "qsense/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qsense/constants.hpp"
#include "qsense/optimal.hpp"

namespace qsense {

std::string format_double(double v) {
    if (v == 0.0) v = 0.0;  // collapse -0
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc())
        throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, ptr);
}

double parse_double(std::string_view s) {
    double v = 0.0;
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end)
        throw ConfigError("not a number: '" + std::string(s) + "'");
    return v;
}

long long parse_int(std::string_view s) {
    long long v = 0;
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end)
        throw ConfigError("not an integer: '" + std::string(s) + "'");
    return v;
}

void ConfigMap::set(std::string key, std::string value) {
    for (auto& kv : items_) {
        if (kv.first == key) {
            kv.second = std::move(value);
            return;
        }
    }
    items_.emplace_back(std::move(key), std::move(value));
}

std::optional<std::string> ConfigMap::get(std::string_view key) const {
    for (const auto& kv : items_)
        if (kv.first == key) return kv.second;
    return std::nullopt;
}

double ConfigMap::get_double(std::string_view key, double fallback) const {
    const auto v = get(key);
    return v ? parse_double(*v) : fallback;
}

std::string ConfigMap::get_string(std::string_view key, std::string fallback) const {
    const auto v = get(key);
    return v ? *v : fallback;
}

static std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

static void parse_entry(ConfigMap& cfg, std::string_view body, std::size_t line_no) {
    const auto eq = body.find('=');
    if (eq == std::string_view::npos || eq == 0)
        throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
    const std::string key(trim(body.substr(0, eq)));
    const std::string value(trim(body.substr(eq + 1)));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    cfg.set(key, value);
}

ConfigMap ConfigMap::parse_text(std::string_view text) {
    ConfigMap cfg;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        line = trim(line);
        if (line.empty()) continue;
        if (line.rfind("#cfg ", 0) == 0) {
            parse_entry(cfg, trim(line.substr(5)), line_no);
            continue;
        }
        if (line.front() == '#') continue;
        if (line.find('=') != std::string_view::npos) {
            parse_entry(cfg, line, line_no);
            continue;
        }
        if (line.find(',') != std::string_view::npos) continue;  // CSV data
        throw ConfigError("line " + std::to_string(line_no) + ": unrecognized config line '" +
                          std::string(line) + "'");
    }
    return cfg;
}

ConfigMap ConfigMap::parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str());
}

std::vector<double> GridSpec::build() const {
    return logarithmic ? log_grid(lo, hi, n) : linear_grid(lo, hi, n);
}

std::string GridSpec::str() const {
    return format_double(lo) + ":" + format_double(hi) + ":" + std::to_string(n) + ":" +
           (logarithmic ? "log" : "lin");
}

GridSpec GridSpec::parse(std::string_view text) {
    std::vector<std::string_view> parts;
    std::string_view rest = text;
    while (true) {
        const auto colon = rest.find(':');
        parts.push_back(rest.substr(0, colon));
        if (colon == std::string_view::npos) break;
        rest = rest.substr(colon + 1);
    }
    if (parts.size() != 4) throw ConfigError("grid must be lo:hi:n:log|lin, got '" + std::string(text) + "'");
    GridSpec g;
    g.lo = parse_double(parts[0]);
    g.hi = parse_double(parts[1]);
    const long long n = parse_int(parts[2]);
    if (n < 2) throw ConfigError("grid needs at least 2 points");
    g.n = static_cast<std::size_t>(n);
    if (parts[3] == "log")
        g.logarithmic = true;
    else if (parts[3] == "lin")
        g.logarithmic = false;
    else
        throw ConfigError("grid scale must be 'log' or 'lin'");
    if (!(g.hi > g.lo)) throw ConfigError("grid needs lo < hi");
    if (g.logarithmic && !(g.lo > 0.0)) throw ConfigError("log grid needs lo > 0");
    return g;
}

CsvWriter::CsvWriter(const ConfigMap& resolved) {
    out_ += "# qsense ";
    out_ += version;
    out_ += " run artifact\n";
    for (const auto& [k, v] : resolved.items()) {
        out_ += "#cfg ";
        out_ += k;
        out_ += "=";
        out_ += v;
        out_ += "\n";
    }
}

void CsvWriter::comment(std::string_view text) {
    out_ += "# ";
    out_ += text;
    out_ += "\n";
}

void CsvWriter::columns(const std::vector<std::string>& names) {
    n_columns_ = names.size();
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out_ += ",";
        out_ += names[i];
    }
    out_ += "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != n_columns_) throw std::logic_error("CsvWriter: column count mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out_ += ",";
        out_ += format_double(values[i]);
    }
    out_ += "\n";
}

void CsvWriter::row_mixed(const std::vector<std::string>& cells) {
    if (cells.size() != n_columns_) throw std::logic_error("CsvWriter: column count mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ += ",";
        out_ += cells[i];
    }
    out_ += "\n";
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace qsense
