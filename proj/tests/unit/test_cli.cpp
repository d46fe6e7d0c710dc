#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "dflow/config.hpp"
#include "dflow/expression.hpp"
#include "dflow/figure.hpp"
#include "dflow/io.hpp"
#include "dflow/scenario.hpp"
#include "dflow/verify.hpp"

using namespace dflow;
using namespace std::complex_literals;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t count_of(const std::string& text, const std::string& needle)
{
    std::size_t n = 0;
    for (std::size_t p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) {
        ++n;
    }
    return n;
}

class Workspace {
public:
    explicit Workspace(const std::string& name) : dir_(fs::temp_directory_path() / ("dflow_test_" + name))
    {
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    ~Workspace() { fs::remove_all(dir_); }

    fs::path write(const std::string& file, const std::string& text) const
    {
        const fs::path p = dir_ / file;
        std::ofstream(p, std::ios::binary) << text;
        return p;
    }
    const fs::path& dir() const { return dir_; }

private:
    fs::path dir_;
};

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_config(const Workspace& ws, Command command, const std::string& text, std::optional<double> tol = {})
{
    RunOptions opt;
    opt.command = command;
    opt.config = ws.write("run.ini", text);
    opt.out_dir = ws.dir() / "out";
    opt.tol = tol;
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(opt, out, err);
    return {code, out.str(), err.str()};
}

const char* const kCircleDarboux = R"(
[grid]
s0 = 0
s1 = 2*pi
h = 1e-3

[curve]
type = circle
radius = 1

[polarization]
mu = 0.25

[darboux]
initial_point = -1, 0
)";

} // namespace

TEST_CASE("expressions")
{
    CHECK(Expression::parse("1 + 2*3")(0.0) == 7.0);
    CHECK(Expression::parse("(1 + 2)*3")(0.0) == 9.0);
    CHECK(Expression::parse("--2")(0.0) == 2.0);
    CHECK(Expression::parse("8/4/2")(0.0) == 1.0);
    CHECK(Expression::parse("2*pi")(0.0) == 2.0 * kPi);
    CHECK(Expression::parse("-pi/6")(0.0) == -kPi / 6.0);
    CHECK(Expression::parse("1e-3")(0.0) == 1e-3);
    CHECK(Expression::parse("1 + 0.5*sin(s)")(0.7) == 1.0 + 0.5 * std::sin(0.7));
    CHECK(Expression::parse("exp(cos(s))")(1.2) == std::exp(std::cos(1.2)));
    CHECK(Expression::parse(" 3 ").is_constant());
    CHECK_FALSE(Expression::parse("0*s").is_constant());
    CHECK(Expression::parse("s*s").source() == "s*s");

    const auto error_at = [](const char* text) -> std::size_t {
        try {
            (void)Expression::parse(text);
        } catch (const ExpressionError& e) {
            return e.position();
        }
        FAIL("expected a parse error for " << text);
        return 0;
    };
    CHECK(error_at("1 +") == 3);
    CHECK(error_at("2 * (s") == 6);
    CHECK(error_at("tan(s)") == 0);
    CHECK(error_at("1 2") == 2);
    CHECK(error_at("") == 0);
}

TEST_CASE("config files")
{
    const Config c = Config::parse(R"(# leading comment
[grid]
s1 = 2*pi   # trailing comment
count = 7

[curve]
type = samples
points = 0, 0; 1, 0.5; 2, 1
center = -1, 2
)");
    CHECK(c.has_section("grid"));
    CHECK(c.number("grid.s1") == 2.0 * kPi);
    CHECK(c.number_or("grid.h", 0.5) == 0.5);
    CHECK(c.index("grid.count") == 7);
    CHECK(c.string("curve.type") == "samples");
    CHECK(c.point("curve.center") == PlanePoint(-1.0, 2.0));
    CHECK(c.points("curve.points") == std::vector<PlanePoint>{0.0, 1.0 + 0.5i, 2.0 + 1i});
    CHECK(c.line_of("curve.center") == 9);
    CHECK(c.unused() == std::vector<std::string>{});

    const auto line_of_error = [](const char* text) -> std::size_t {
        try {
            (void)Config::parse(text);
        } catch (const ConfigError& e) {
            return e.line();
        }
        FAIL("expected a config error");
        return 0;
    };
    CHECK(line_of_error("a = 1") == 1);
    CHECK(line_of_error("[x]\na = 1\na = 2") == 3);
    CHECK(line_of_error("[x]\n[x]") == 2);
    CHECK(line_of_error("[x]\njunk") == 2);
    CHECK(line_of_error("[x\n") == 1);

    const Config bad = Config::parse("[grid]\nh = s\nn = -1\np = 1\n");
    CHECK_THROWS_AS(bad.number("grid.h"), ConfigError);
    CHECK_THROWS_AS(bad.index("grid.n"), ConfigError);
    CHECK_THROWS_AS(bad.point("grid.p"), ConfigError);
    CHECK_THROWS_AS(bad.number("grid.missing"), ConfigError);
}

TEST_CASE("unused keys are reported")
{
    const Config c = Config::parse("[a]\nx = 1\ny = 2\n");
    (void)c.number("a.x");
    CHECK(c.unused() == std::vector<std::string>{"a.y"});
}

TEST_CASE("CSV layout and round trip")
{
    const SGrid g(0.1, 1.0 / 3.0, 4);
    std::vector<std::vector<PlanePoint>> rows(2);
    for (std::size_t i = 0; i < 4; ++i) {
        rows[0].push_back(std::polar(1.0, g.at(i)));
        rows[1].push_back(PlanePoint(1.0 / 7.0, -std::sqrt(2.0)) * g.at(i));
    }
    const Sheet sheet(g, rows);
    const std::string text = format_csv(sheet);

    CHECK(text.rfind("n,s,x,y\n", 0) == 0);
    CHECK(text.find('\r') == std::string::npos);
    CHECK(count_of(text, "\n") == 9);
    CHECK(text.find("0,0.10000000000000001,") != std::string::npos);

    const CsvTable t = parse_csv(text);
    REQUIRE(t.rows.size() == 2);
    for (std::size_t n = 0; n < 2; ++n) {
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(t.rows[n][i] == rows[n][i]);
            CHECK(t.s[i] == g.at(i));
        }
    }
    CHECK(format_csv(Sheet(grid_of(t), t.rows)) == text);

    const auto line_of_error = [](const std::string& csv) -> std::size_t {
        try {
            (void)parse_csv(csv);
        } catch (const ConfigError& e) {
            return e.line();
        }
        FAIL("expected a CSV error");
        return 0;
    };
    CHECK(line_of_error("n,s,x\n") == 1);
    CHECK(line_of_error("n,s,x,y\n0,0,1,1\n0,0.1,1\n") == 3);
    CHECK(line_of_error("n,s,x,y\n1,0,1,1\n") == 2);
    CHECK(line_of_error("n,s,x,y\n0,0,abc,1\n") == 2);
    CHECK(line_of_error("n,s,x,y\n0,0,1,1\n0,0.1,1,1\n1,0,1,1\n1,0.2,1,1\n") == 5);
}

TEST_CASE("SVG output")
{
    const std::vector<std::vector<PlanePoint>> curves{
        {0.0, 1.0, 1.0 + 1i}, {2.0, 3.0 + 1i}, {-1.0, -1.0 - 1i}, {0.5i, 1.5i}};
    const std::vector<PlanePoint> markers{0.3};
    const std::string svg = render_svg(curves, markers);
    CHECK(svg.find("version=\"1.1\"") != std::string::npos);
    CHECK(count_of(svg, "<polyline") == 4);
    CHECK(count_of(svg, "stroke=\"red\"") == 2);
    CHECK(count_of(svg, "stroke=\"blue\"") == 1);
    CHECK(count_of(svg, "stroke=\"black\"") == 1);
    CHECK(count_of(svg, "<circle") == 1);
    // x spans [-1, 3], flipped y spans [-1.5, 1]; 5% margin on each axis.
    CHECK(svg.find("viewBox=\"-1.2 -1.625 4.4 2.75\"") != std::string::npos);
    CHECK(render_svg(curves, markers) == svg);
}

TEST_CASE("figure data")
{
    const Figure1 f = make_figure1();
    CHECK(f.first_defect < 1e-6);
    CHECK(f.second_defect < 1e-6);
    CHECK(f.mutual_distance >= 0.01);
    CHECK(f.first.point(0) == PlanePoint(0.3, 0.0));
    CHECK(f.second.point(0) == PlanePoint(0.3, 0.0));
    const std::string svg = render_figure1(f);
    CHECK(count_of(svg, "<polyline") == 3);
    CHECK(svg.find("stroke=\"red\"") < svg.find("stroke=\"blue\""));
}

TEST_CASE("commands and exit codes")
{
    CHECK(parse_command("figure1") == Command::Figure1);
    CHECK_FALSE(parse_command("bogus").has_value());
    CHECK(command_name(Command::Motion) == "motion");

    Workspace ws("exit_codes");

    SUBCASE("darboux writes the antipodal circle")
    {
        const Outcome o = run_config(ws, Command::Darboux, kCircleDarboux);
        REQUIRE(o.code == kExitSuccess);
        const CsvTable t = read_csv(ws.dir() / "out" / "darboux.csv");
        REQUIRE(t.rows.size() == 2);
        CHECK(std::abs(t.rows[1].back() - PlanePoint(-1.0)) < 1e-6);
        CHECK(std::abs(t.s.back() - 2.0 * kPi) < 1e-12);
        CHECK_FALSE(fs::exists(ws.dir() / "out" / "darboux.svg"));
    }
    SUBCASE("missing key")
    {
        const Outcome o = run_config(ws, Command::Darboux, "[grid]\ns1 = 1\n[curve]\ntype = circle\n");
        CHECK(o.code == kExitValidation);
        CHECK(o.err.find("polarization.mu") != std::string::npos);
    }
    SUBCASE("unknown curve type")
    {
        const Outcome o = run_config(ws, Command::Darboux,
            "[grid]\ns1 = 1\n[curve]\ntype = spiral\n[polarization]\nmu = 1\n[darboux]\ninitial_point = 0, 1\n");
        CHECK(o.code == kExitValidation);
        CHECK(o.err.find("line 4") != std::string::npos);
    }
    SUBCASE("malformed config")
    {
        CHECK(run_config(ws, Command::Flow, "[grid\n").code == kExitValidation);
    }
    SUBCASE("numerical failure")
    {
        const Outcome o = run_config(ws, Command::Darboux,
            "[grid]\ns1 = 1\n[curve]\ntype = circle\n[polarization]\nmu = 0.25\n[darboux]\ninitial_point = 1, 0\n");
        CHECK(o.code == kExitNumerical);
    }
    SUBCASE("verification failure")
    {
        const Outcome o = run_config(ws, Command::Darboux, kCircleDarboux, 1e-30);
        CHECK(o.code == kExitVerification);
        CHECK(o.out.find("FAILED") != std::string::npos);
    }
    SUBCASE("non-arclength offset angle")
    {
        const Outcome o = run_config(ws, Command::Darboux,
            "[grid]\ns1 = 1\n[curve]\ntype = circle\nradius = 2\n[polarization]\nm = 4\nmu = 1\n"
            "[darboux]\noffset_angle = 0\n");
        CHECK(o.code == kExitValidation);
    }
    SUBCASE("missing config")
    {
        RunOptions opt;
        opt.command = Command::Motion;
        std::ostringstream out;
        std::ostringstream err;
        CHECK(run(opt, out, err) == kExitValidation);
    }
    SUBCASE("unused keys warn")
    {
        const Outcome o = run_config(ws, Command::Darboux, std::string(kCircleDarboux) + "[flow]\nn0 = 3\n");
        CHECK(o.code == kExitSuccess);
        CHECK(o.err.find("flow.n0") != std::string::npos);
    }
}

TEST_CASE("scenario builders")
{
    SUBCASE("grid")
    {
        const SGrid g = scenario_grid(Config::parse("[grid]\ns0 = 1\ns1 = 3\nh = 0.3\n"), std::nullopt);
        CHECK(g.s0() == 1.0);
        CHECK(g.s1() == doctest::Approx(3.0));
        CHECK(g.step() <= 0.3);
        CHECK(scenario_grid(Config::parse("[grid]\ns1 = 1\n"), 0.25).count() == 5);
    }
    SUBCASE("polygon")
    {
        const auto v = scenario_polygon(Config::parse("[polygon]\ntype = ngon\nsides = 5\nradius = 2\n"));
        CHECK(v.size() == 6);
        CHECK(std::abs(v[0] - 2.0) < 1e-15);
        CHECK(scenario_polygon(Config::parse("[polygon]\ntype = vertices\npoints = 0, 0; 1, 0\n")).size() == 2);
        CHECK_THROWS_AS(scenario_polygon(Config::parse("[polygon]\ntype = ngon\nsides = 2\n")), ConfigError);
    }
    SUBCASE("edge weights")
    {
        const std::vector<PlanePoint> v{0.0, 2.0, 2.0 + 1i};
        CHECK(scenario_edge_mu(Config::parse("[polarization]\nmu = arclength\n"), v) == std::vector<double>{0.25, 1.0});
        CHECK(scenario_edge_mu(Config::parse("[polarization]\nmu = 0.5\n"), v) == std::vector<double>{0.5, 0.5});
        CHECK(scenario_edge_mu(Config::parse("[polarization]\nmu = 1, 2\n"), v) == std::vector<double>{1.0, 2.0});
        CHECK_THROWS_AS(scenario_edge_mu(Config::parse("[polarization]\nmu = 1, 2, 3\n"), v), ConfigError);
    }
    SUBCASE("sampled curve from a file")
    {
        Workspace ws("samples");
        const SGrid g(0.0, 0.1, 21);
        std::vector<std::vector<PlanePoint>> rows(1);
        for (std::size_t i = 0; i < g.count(); ++i) {
            rows[0].push_back(std::polar(1.0, g.at(i)));
        }
        ws.write("c.csv", format_csv(Sheet(g, rows)));
        const Config c = Config::parse("[curve]\ntype = samples\nfile = c.csv\n");
        const auto curve = scenario_curve(c, std::nullopt, Polarization::constant(1.0), ws.dir());
        CHECK(curve.grid().count() == 21);
        CHECK(std::abs(curve.derivative(10) - 1i * std::polar(1.0, 1.0)) < 1e-5);
    }
}

TEST_CASE("acceptance formatting")
{
    CHECK(format_criterion({3, "title", true, "x = 1"}) == "PASS  3  title: x = 1");
    CHECK(format_criterion({12, "t", false, "d"}).rfind("FAIL", 0) == 0);
}
