#include "dflow/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "dflow/config.hpp"
#include "dflow/error.hpp"

namespace dflow {

namespace {

constexpr std::string_view kHeader = "n,s,x,y";
constexpr std::array<std::string_view, 3> kColors{"red", "blue", "black"};

void append_number(std::string& out, double v, int digits)
{
    char buffer[40];
    const int len = std::snprintf(buffer, sizeof buffer, "%.*g", digits, v);
    out.append(buffer, static_cast<std::size_t>(len));
}

double parse_field(std::string_view field, std::size_t line)
{
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw ConfigError(line, "malformed number '" + std::string(field) + "'");
    }
    return v;
}

} // namespace

std::string format_csv(const Sheet& sheet)
{
    std::string out(kHeader);
    out += '\n';
    const SGrid& grid = sheet.grid();
    for (std::size_t n = 0; n < sheet.row_count(); ++n) {
        for (std::size_t i = 0; i < grid.count(); ++i) {
            const PlanePoint p = sheet.at(n, i);
            out += std::to_string(n);
            out += ',';
            append_number(out, grid.at(i), 17);
            out += ',';
            append_number(out, p.real(), 17);
            out += ',';
            append_number(out, p.imag(), 17);
            out += '\n';
        }
    }
    return out;
}

CsvTable parse_csv(std::string_view text)
{
    CsvTable table;
    std::size_t line_no = 0;
    std::size_t begin = 0;
    bool header_seen = false;
    std::size_t node = 0;
    while (begin < text.size()) {
        auto end = text.find('\n', begin);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(begin, end - begin);
        begin = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty()) {
            continue;
        }
        if (!header_seen) {
            if (line != kHeader) {
                throw ConfigError(line_no, "expected header '" + std::string(kHeader) + "'");
            }
            header_seen = true;
            continue;
        }
        std::array<std::string_view, 4> fields;
        std::size_t field_begin = 0;
        for (std::size_t k = 0; k < 4; ++k) {
            const auto comma = line.find(',', field_begin);
            if ((k < 3) == (comma == std::string_view::npos)) {
                throw ConfigError(line_no, "expected 4 fields");
            }
            fields[k] = line.substr(field_begin, comma - field_begin);
            field_begin = comma + 1;
        }
        std::size_t n = 0;
        const auto [ptr, ec] = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), n);
        if (ec != std::errc{} || ptr != fields[0].data() + fields[0].size()) {
            throw ConfigError(line_no, "malformed row index '" + std::string(fields[0]) + "'");
        }
        const double s = parse_field(fields[1], line_no);
        const PlanePoint p{parse_field(fields[2], line_no), parse_field(fields[3], line_no)};

        if (n == table.rows.size()) {
            if (n > 0 && table.rows.back().size() != table.s.size()) {
                throw ConfigError(line_no, "row " + std::to_string(n - 1) + " is shorter than row 0");
            }
            table.rows.emplace_back();
            node = 0;
        } else if (n + 1 != table.rows.size()) {
            throw ConfigError(line_no, "rows must be numbered 0, 1, ... in order");
        }
        if (n == 0) {
            if (!table.s.empty() && s <= table.s.back()) {
                throw ConfigError(line_no, "s must increase within a row");
            }
            table.s.push_back(s);
        } else if (node >= table.s.size() || s != table.s[node]) {
            throw ConfigError(line_no, "s column differs from row 0");
        }
        table.rows.back().push_back(p);
        ++node;
    }
    if (!header_seen || table.rows.empty()) {
        throw ConfigError(line_no, "no data rows");
    }
    if (table.rows.back().size() != table.s.size()) {
        throw ConfigError(line_no, "last row is shorter than row 0");
    }
    return table;
}

CsvTable read_csv(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError(0, "cannot open '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_csv(buffer.str());
}

SGrid grid_of(const CsvTable& table)
{
    const std::size_t count = table.s.size();
    if (count < 2) {
        return SGrid(table.s.front(), 1.0, count);
    }
    return SGrid(table.s.front(), (table.s.back() - table.s.front()) / static_cast<double>(count - 1), count);
}

std::string render_svg(std::span<const std::vector<PlanePoint>> curves, std::span<const PlanePoint> markers)
{
    double xmin = std::numeric_limits<double>::infinity();
    double xmax = -xmin;
    double ymin = xmin;
    double ymax = -xmin;
    auto extend = [&](PlanePoint p) {
        xmin = std::min(xmin, p.real());
        xmax = std::max(xmax, p.real());
        ymin = std::min(ymin, -p.imag() + 0.0);
        ymax = std::max(ymax, -p.imag());
    };
    for (const auto& c : curves) {
        std::for_each(c.begin(), c.end(), extend);
    }
    std::for_each(markers.begin(), markers.end(), extend);
    if (!(xmin <= xmax)) {
        xmin = ymin = -1.0;
        xmax = ymax = 1.0;
    }
    double width = xmax - xmin;
    double height = ymax - ymin;
    const double extent = std::max({width, height, 1e-12});
    if (width < 1e-12 * extent) {
        width = extent;
        xmin -= 0.5 * extent;
    }
    if (height < 1e-12 * extent) {
        height = extent;
        ymin -= 0.5 * extent;
    }
    const double mx = 0.05 * width;
    const double my = 0.05 * height;
    const double stroke = 0.004 * extent;

    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"";
    append_number(out, xmin - mx, 10);
    out += ' ';
    append_number(out, ymin - my, 10);
    out += ' ';
    append_number(out, width + 2 * mx, 10);
    out += ' ';
    append_number(out, height + 2 * my, 10);
    out += "\">\n";
    for (std::size_t k = 0; k < curves.size(); ++k) {
        out += "  <polyline fill=\"none\" stroke=\"";
        out += kColors[k % kColors.size()];
        out += "\" stroke-width=\"";
        append_number(out, stroke, 6);
        out += "\" points=\"";
        for (std::size_t i = 0; i < curves[k].size(); ++i) {
            if (i > 0) {
                out += ' ';
            }
            append_number(out, curves[k][i].real(), 10);
            out += ',';
            append_number(out, -curves[k][i].imag() + 0.0, 10);
        }
        out += "\"/>\n";
    }
    for (PlanePoint p : markers) {
        out += "  <circle fill=\"black\" cx=\"";
        append_number(out, p.real(), 10);
        out += "\" cy=\"";
        append_number(out, -p.imag() + 0.0, 10);
        out += "\" r=\"";
        append_number(out, 3 * stroke, 6);
        out += "\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view text)
{
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorKind::InvalidArgument, "cannot write '" + path.string() + "'");
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) {
        throw Error(ErrorKind::InvalidArgument, "failed writing '" + path.string() + "'");
    }
}

} // namespace dflow
