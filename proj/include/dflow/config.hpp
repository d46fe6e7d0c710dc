#pragma once

// Sectioned key = value files:
//
//   # comment
//   [grid]
//   s0 = 0
//   s1 = 2*pi
//
// Keys are looked up as "section.key". Values keep their source line for
// error reporting.

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dflow/geometry.hpp"

namespace dflow {

class ConfigError : public std::runtime_error {
public:
    ConfigError(std::size_t line, const std::string& message);
    /// 1-based source line, 0 when the problem is not tied to one.
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class Config {
public:
    struct Entry {
        std::string value;
        std::size_t line = 0;
    };

    static Config parse(std::string_view text);
    static Config load(const std::filesystem::path& path);

    bool has(const std::string& key) const;
    bool has_section(const std::string& section) const;
    void set(const std::string& key, std::string value);

    std::string string(const std::string& key) const;
    std::string string_or(const std::string& key, std::string fallback) const;
    /// Numbers accept constant expressions, e.g. "2*pi" or "-pi/6".
    double number(const std::string& key) const;
    double number_or(const std::string& key, double fallback) const;
    std::size_t index(const std::string& key) const;
    std::size_t index_or(const std::string& key, std::size_t fallback) const;
    /// "x, y"
    PlanePoint point(const std::string& key) const;
    /// "x, y; x, y; ..."
    std::vector<PlanePoint> points(const std::string& key) const;
    /// "a, b, c"
    std::vector<double> numbers(const std::string& key) const;

    /// Line of a key, for callers that validate values themselves.
    std::size_t line_of(const std::string& key) const;
    /// Keys present in the file that the caller never read.
    std::vector<std::string> unused() const;

private:
    const Entry& entry(const std::string& key) const;

    std::map<std::string, Entry> entries_;
    std::map<std::string, std::size_t> sections_;
    mutable std::map<std::string, bool> used_;
};

} // namespace dflow
