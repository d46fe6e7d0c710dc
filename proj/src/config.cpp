#include "dflow/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dflow/expression.hpp"

namespace dflow {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t begin = 0;
    for (;;) {
        const auto end = s.find(sep, begin);
        parts.push_back(trim(s.substr(begin, end - begin)));
        if (end == std::string_view::npos) {
            return parts;
        }
        begin = end + 1;
    }
}

bool valid_name(std::string_view name)
{
    if (name.empty()) {
        return false;
    }
    for (char c : name) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) {
            return false;
        }
    }
    return true;
}

double evaluate_constant(std::string_view text, std::size_t line, const std::string& key)
{
    try {
        const Expression e = Expression::parse(text);
        if (!e.is_constant()) {
            throw ConfigError(line, key + ": expected a constant, got an expression in s");
        }
        const double v = e(0.0);
        if (!std::isfinite(v)) {
            throw ConfigError(line, key + ": value is not finite");
        }
        return v;
    } catch (const ExpressionError& err) {
        throw ConfigError(line, key + ": " + err.what());
    }
}

} // namespace

ConfigError::ConfigError(std::size_t line, const std::string& message)
    : std::runtime_error(line > 0 ? "config line " + std::to_string(line) + ": " + message : "config: " + message)
    , line_(line)
{
}

Config Config::parse(std::string_view text)
{
    Config config;
    std::string section;
    std::size_t line_no = 0;
    std::size_t begin = 0;
    while (begin <= text.size()) {
        auto end = text.find('\n', begin);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(begin, end - begin);
        begin = end + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError(line_no, "unterminated section header");
            }
            const auto name = trim(line.substr(1, line.size() - 2));
            if (!valid_name(name)) {
                throw ConfigError(line_no, "invalid section name '" + std::string(name) + "'");
            }
            section = std::string(name);
            if (config.sections_.contains(section)) {
                throw ConfigError(line_no, "duplicate section [" + section + "]");
            }
            config.sections_[section] = line_no;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(line_no, "expected 'key = value'");
        }
        if (section.empty()) {
            throw ConfigError(line_no, "key outside of any section");
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (!valid_name(key)) {
            throw ConfigError(line_no, "invalid key '" + std::string(key) + "'");
        }
        if (value.empty()) {
            throw ConfigError(line_no, "empty value for '" + std::string(key) + "'");
        }
        const std::string full = section + "." + std::string(key);
        if (config.entries_.contains(full)) {
            throw ConfigError(line_no, "duplicate key '" + full + "'");
        }
        config.entries_[full] = Entry{std::string(value), line_no};
    }
    return config;
}

Config Config::load(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError(0, "cannot open '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

bool Config::has(const std::string& key) const
{
    return entries_.contains(key);
}

bool Config::has_section(const std::string& section) const
{
    return sections_.contains(section);
}

void Config::set(const std::string& key, std::string value)
{
    const auto dot = key.find('.');
    if (dot != std::string::npos) {
        sections_.try_emplace(key.substr(0, dot), 0);
    }
    entries_[key] = Entry{std::move(value), 0};
}

const Config::Entry& Config::entry(const std::string& key) const
{
    const auto it = entries_.find(key);
    if (it == entries_.end()) {
        throw ConfigError(0, "missing required key '" + key + "'");
    }
    used_[key] = true;
    return it->second;
}

std::string Config::string(const std::string& key) const
{
    return entry(key).value;
}

std::string Config::string_or(const std::string& key, std::string fallback) const
{
    return has(key) ? string(key) : fallback;
}

double Config::number(const std::string& key) const
{
    const Entry& e = entry(key);
    return evaluate_constant(e.value, e.line, key);
}

double Config::number_or(const std::string& key, double fallback) const
{
    return has(key) ? number(key) : fallback;
}

std::size_t Config::index(const std::string& key) const
{
    const Entry& e = entry(key);
    const double v = evaluate_constant(e.value, e.line, key);
    if (v < 0.0 || v != std::floor(v) || v > 1e9) {
        throw ConfigError(e.line, key + ": expected a non-negative integer");
    }
    return static_cast<std::size_t>(v);
}

std::size_t Config::index_or(const std::string& key, std::size_t fallback) const
{
    return has(key) ? index(key) : fallback;
}

PlanePoint Config::point(const std::string& key) const
{
    const Entry& e = entry(key);
    const auto parts = split(e.value, ',');
    if (parts.size() != 2) {
        throw ConfigError(e.line, key + ": expected 'x, y'");
    }
    return {evaluate_constant(parts[0], e.line, key), evaluate_constant(parts[1], e.line, key)};
}

std::vector<PlanePoint> Config::points(const std::string& key) const
{
    const Entry& e = entry(key);
    std::vector<PlanePoint> out;
    for (auto item : split(e.value, ';')) {
        if (item.empty()) {
            continue;
        }
        const auto parts = split(item, ',');
        if (parts.size() != 2) {
            throw ConfigError(e.line, key + ": expected 'x, y; x, y; ...'");
        }
        out.emplace_back(evaluate_constant(parts[0], e.line, key), evaluate_constant(parts[1], e.line, key));
    }
    if (out.empty()) {
        throw ConfigError(e.line, key + ": empty point list");
    }
    return out;
}

std::vector<double> Config::numbers(const std::string& key) const
{
    const Entry& e = entry(key);
    std::vector<double> out;
    for (auto item : split(e.value, ',')) {
        out.push_back(evaluate_constant(item, e.line, key));
    }
    return out;
}

std::size_t Config::line_of(const std::string& key) const
{
    const auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.line;
}

std::vector<std::string> Config::unused() const
{
    std::vector<std::string> out;
    for (const auto& [key, e] : entries_) {
        if (!used_.contains(key)) {
            out.push_back(key);
        }
    }
    return out;
}

} // namespace dflow
