#include "dflow/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "dflow/darboux.hpp"
#include "dflow/error.hpp"
#include "dflow/expression.hpp"
#include "dflow/figure.hpp"
#include "dflow/io.hpp"
#include "dflow/motion.hpp"
#include "dflow/semidiscrete.hpp"
#include "dflow/shapes.hpp"
#include "dflow/verify.hpp"

namespace dflow {

namespace {

constexpr double kDefaultStep = 1e-3;
constexpr double kDefaultTolerance = 1e-6;
constexpr double kMaxNodes = 5e7;

Expression expression(const Config& config, const std::string& key, const std::string& fallback)
{
    const std::string text = config.string_or(key, fallback);
    try {
        return Expression::parse(text);
    } catch (const ExpressionError& e) {
        throw ConfigError(config.line_of(key), key + ": " + e.what());
    }
}

double positive(const Config& config, const std::string& key, double fallback)
{
    const double v = config.number_or(key, fallback);
    if (!(v > 0.0)) {
        throw ConfigError(config.line_of(key), key + " must be positive");
    }
    return v;
}

std::size_t start_node(const Config& config, const SGrid& grid)
{
    const std::size_t start = config.index_or("grid.start", 0);
    if (start >= grid.count()) {
        throw ConfigError(config.line_of("grid.start"),
            "grid.start " + std::to_string(start) + " is outside the grid of " + std::to_string(grid.count()) + " nodes");
    }
    return start;
}

std::vector<PlanePoint> points_of(const PolarizedCurve& c)
{
    return {c.points().begin(), c.points().end()};
}

std::string sci(double v)
{
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

class Runner {
public:
    Runner(const RunOptions& options, Config config, std::ostream& out, std::ostream& err)
        : options_(options)
        , config_(std::move(config))
        , out_(out)
        , err_(err)
        , tol_(options.tol.value_or(kDefaultTolerance))
    {
        if (options.config) {
            base_dir_ = options.config->parent_path();
        }
    }

    int dispatch()
    {
        int status = kExitSuccess;
        switch (options_.command) {
        case Command::Darboux: status = darboux(); break;
        case Command::Flow: status = flow(); break;
        case Command::Motion: status = motion(); break;
        case Command::Verify: status = verify(); break;
        case Command::Figure1: status = figure1(); break;
        }
        for (const std::string& key : config_.unused()) {
            err_ << "warning: unused config key '" << key << "' (line " << config_.line_of(key) << ")\n";
        }
        return status;
    }

private:
    std::filesystem::path output(const std::string& kind, const std::string& fallback) const
    {
        return options_.out_dir / config_.string_or("output." + kind, fallback);
    }

    void emit(const std::filesystem::path& path, std::string_view text)
    {
        write_text_file(path, text);
        out_ << "wrote " << path.string() << "\n";
    }

    void emit_sheet(const Sheet& sheet, const std::string& stem, bool svg_by_default)
    {
        emit(output("csv", stem + ".csv"), format_csv(sheet));
        if (svg_by_default || config_.has("output.svg")) {
            std::vector<std::vector<PlanePoint>> rows;
            for (std::size_t n = 0; n < sheet.row_count(); ++n) {
                rows.emplace_back(sheet.row(n).begin(), sheet.row(n).end());
            }
            emit(output("svg", stem + ".svg"), render_svg(rows));
        }
    }

    int check(const std::string& what, double value)
    {
        const bool ok = value <= tol_;
        out_ << what << ": " << sci(value) << (ok ? " <= " : " > ") << sci(tol_) << (ok ? "" : "  FAILED") << "\n";
        return ok ? kExitSuccess : kExitVerification;
    }

    int darboux()
    {
        const Polarization m = scenario_polarization(config_);
        const PolarizedCurve curve = scenario_curve(config_, options_.h, m, base_dir_);
        const std::size_t start = start_node(config_, curve.grid());
        const double mu = config_.number("polarization.mu");

        const bool by_angle = config_.has("darboux.offset_angle");
        if (by_angle && config_.has("darboux.initial_point")) {
            throw ConfigError(config_.line_of("darboux.offset_angle"),
                "give either darboux.initial_point or darboux.offset_angle");
        }
        const PolarizedCurve transform = by_angle
            ? arclength_darboux(curve, mu, config_.number("darboux.offset_angle"), start)
            : darboux_transform(curve, {mu, config_.point("darboux.initial_point")}, start);

        emit_sheet(Sheet(curve.grid(), {points_of(curve), points_of(transform)}), "darboux", false);
        double lambda_min = INFINITY;
        double lambda_max = 0.0;
        for (std::size_t i = 0; i < curve.grid().count(); ++i) {
            const double lambda = std::norm(transform.point(i) - curve.point(i));
            lambda_min = std::min(lambda_min, lambda);
            lambda_max = std::max(lambda_max, lambda);
        }
        out_ << "nodes: " << curve.grid().count() << "\n";
        out_ << "Lambda range: [" << lambda_min << ", " << lambda_max << "]\n";
        return check("max |m cr - mu|", cross_ratio_defect(curve, transform, mu));
    }

    int flow()
    {
        const Polarization m = scenario_polarization(config_);
        const PolarizedCurve seed = scenario_curve(config_, options_.h, m, base_dir_);
        const std::vector<PlanePoint> vertices = scenario_polygon(config_);
        const std::vector<double> mu = scenario_edge_mu(config_, vertices);
        const FlowSpec spec{DiscretePolarizedCurve(vertices, mu), m, config_.index_or("flow.n0", 0), seed,
            start_node(config_, seed.grid())};
        const Sheet sheet = infinitesimal_darboux(spec);

        emit_sheet(sheet, "flow", false);
        const auto defects = edge_cross_ratio_defects(sheet, mu, m);
        for (std::size_t e = 0; e < defects.size(); ++e) {
            out_ << "edge " << e << " max |m cr - mu|: " << sci(defects[e]) << "\n";
        }
        const ArclengthFlowReport arc = arclength_flow_check(sheet, mu, m);
        out_ << "discrete arc-length deviation of columns: " << sci(arc.column_deviation) << "\n";
        out_ << "smooth arc-length deviation of rows: " << sci(arc.row_deviation) << "\n";
        return check("max |m cr - mu|", defects.empty() ? 0.0 : *std::max_element(defects.begin(), defects.end()));
    }

    int motion()
    {
        const SGrid grid = scenario_grid(config_, options_.h);
        if (config_.index_or("grid.start", 0) != 0) {
            throw ConfigError(config_.line_of("grid.start"), "motion starts at the first grid node");
        }
        const std::vector<PlanePoint> vertices = scenario_polygon(config_);
        const Expression w0 = expression(config_, "motion.w0", "0");
        const MotionResult result
            = integrate_motion(vertices, [&w0](double s) { return w0(s); }, config_.index_or("motion.n0", 0), grid);

        emit_sheet(result.sheet, "motion", false);
        if (config_.has("output.theta")) {
            std::string text = "n,s,theta\n";
            char buffer[96];
            for (std::size_t n = 0; n < result.theta.size(); ++n) {
                for (std::size_t i = 0; i < grid.count(); ++i) {
                    std::snprintf(buffer, sizeof buffer, "%zu,%.17g,%.17g\n", n, grid.at(i), result.theta[n][i]);
                    text += buffer;
                }
            }
            emit(output("theta", "theta.csv"), text);
        }
        const auto a0 = result.initial_edge_lengths();
        const FrameCompatibilityReport frame = frame_compatibility_check(result);
        out_ << "frame compatibility: " << sci(frame.compatibility) << "\n";
        out_ << "psi' + (2/a) sin w: " << sci(frame.frenet) << "\n";
        const int lengths = check("max |a_n(s) - a_n(s0)|", isoperimetric_defect(result));
        const int mkdv = check("mKdV residual", mkdv_residual(result.theta, a0, grid));
        return std::max(lengths, mkdv);
    }

    int verify()
    {
        if (options_.h) {
            err_ << "note: --h is ignored by verify; every criterion runs at its own step\n";
        }
        VerifyOptions vo;
        vo.tolerance_scale = options_.tol.value_or(1.0);
        const auto results = run_acceptance(vo);
        std::size_t passed = 0;
        for (const CriterionResult& r : results) {
            out_ << format_criterion(r) << "\n";
            passed += r.passed ? 1 : 0;
        }
        out_ << passed << "/" << results.size() << " criteria passed\n";
        return passed == results.size() ? kExitSuccess : kExitVerification;
    }

    int figure1()
    {
        Figure1Params params;
        params.h = options_.h.value_or(config_.number_or("grid.h", kDefaultStep));
        if (!(params.h > 0.0)) {
            throw ConfigError(config_.line_of("grid.h"), "grid.h must be positive");
        }
        params.mu = config_.number_or("figure.mu", params.mu);
        if (config_.has("figure.initial_point")) {
            params.initial_point = config_.point("figure.initial_point");
        }
        if (config_.has("figure.m2")) {
            const Expression m2 = expression(config_, "figure.m2", "");
            params.m2 = [m2](double s) { return m2(s); };
        }
        const Figure1 fig = make_figure1(params);
        emit(output("svg", "figure1.svg"), render_figure1(fig));
        emit(output("csv", "figure1.csv"),
            format_csv(Sheet(fig.base.grid(), {points_of(fig.base), points_of(fig.first), points_of(fig.second)})));

        const int first = check("m1 transform max |m cr - mu|", fig.first_defect);
        const int second = check("m2 transform max |m cr - mu|", fig.second_defect);
        const bool distinct = fig.mutual_distance > 0.01;
        out_ << "mutual distance: " << sci(fig.mutual_distance) << (distinct ? " > " : " <= ") << "1.000e-02"
             << (distinct ? "" : "  FAILED") << "\n";
        return std::max({first, second, distinct ? int{kExitSuccess} : int{kExitVerification}});
    }

    const RunOptions& options_;
    Config config_;
    std::ostream& out_;
    std::ostream& err_;
    double tol_;
    std::filesystem::path base_dir_;
};

bool needs_config(Command c)
{
    return c == Command::Darboux || c == Command::Flow || c == Command::Motion;
}

} // namespace

std::optional<Command> parse_command(std::string_view name)
{
    for (Command c : {Command::Darboux, Command::Flow, Command::Motion, Command::Verify, Command::Figure1}) {
        if (command_name(c) == name) {
            return c;
        }
    }
    return std::nullopt;
}

std::string_view command_name(Command command)
{
    switch (command) {
    case Command::Darboux: return "darboux";
    case Command::Flow: return "flow";
    case Command::Motion: return "motion";
    case Command::Verify: return "verify";
    case Command::Figure1: return "figure1";
    }
    return "";
}

SGrid scenario_grid(const Config& config, std::optional<double> h)
{
    const double s0 = config.number_or("grid.s0", 0.0);
    const double s1 = config.number("grid.s1");
    const double step = h ? *h : config.number_or("grid.h", kDefaultStep);
    if (!(step > 0.0)) {
        throw ConfigError(h ? 0 : config.line_of("grid.h"), "grid step must be positive");
    }
    if (s1 < s0) {
        throw ConfigError(config.line_of("grid.s1"), "grid.s1 must not be less than grid.s0");
    }
    if ((s1 - s0) / step > kMaxNodes) {
        throw ConfigError(config.line_of("grid.s1"), "grid has too many nodes");
    }
    return SGrid::covering(s0, s1, step);
}

Polarization scenario_polarization(const Config& config)
{
    const Expression m = expression(config, "polarization.m", "1");
    if (m.is_constant()) {
        const double v = m(0.0);
        if (!(std::isfinite(v) && v != 0.0)) {
            throw ConfigError(config.line_of("polarization.m"), "polarization.m must be finite and nonzero");
        }
        return Polarization::constant(v);
    }
    return Polarization::function([m](double s) { return m(s); });
}

PolarizedCurve scenario_curve(const Config& config, std::optional<double> h, const Polarization& m,
    const std::filesystem::path& base_dir)
{
    const std::string type = config.string("curve.type");
    if (type == "circle") {
        return arclength_circle(scenario_grid(config, h), positive(config, "curve.radius", 1.0),
            config.has("curve.center") ? config.point("curve.center") : PlanePoint{}, m);
    }
    if (type == "line") {
        const PlanePoint direction = config.has("curve.direction") ? config.point("curve.direction") : PlanePoint{1.0};
        if (std::abs(direction) == 0.0) {
            throw ConfigError(config.line_of("curve.direction"), "curve.direction must be nonzero");
        }
        return straight_line(scenario_grid(config, h), config.has("curve.origin") ? config.point("curve.origin") : 0.0,
            direction, m);
    }
    if (type == "samples") {
        if (config.has("curve.file") == config.has("curve.points")) {
            throw ConfigError(config.line_of("curve.type"), "samples need exactly one of curve.file, curve.points");
        }
        if (config.has("curve.points")) {
            const SGrid grid = scenario_grid(config, h);
            std::vector<PlanePoint> pts = config.points("curve.points");
            if (pts.size() != grid.count()) {
                throw ConfigError(config.line_of("curve.points"),
                    "curve.points has " + std::to_string(pts.size()) + " samples, the grid has "
                        + std::to_string(grid.count()) + " nodes");
            }
            return PolarizedCurve::sampled(grid, std::move(pts), m);
        }
        const std::filesystem::path file = base_dir / config.string("curve.file");
        if (!std::filesystem::exists(file)) {
            throw ConfigError(config.line_of("curve.file"), "file '" + file.string() + "' does not exist");
        }
        CsvTable table = read_csv(file);
        const std::size_t row = config.index_or("curve.row", 0);
        if (row >= table.rows.size()) {
            throw ConfigError(config.line_of("curve.row"), "curve.row is past the last row of the file");
        }
        return PolarizedCurve::sampled(grid_of(table), std::move(table.rows[row]), m);
    }
    throw ConfigError(config.line_of("curve.type"), "unknown curve.type '" + type + "' (circle, line, samples)");
}

std::vector<PlanePoint> scenario_polygon(const Config& config)
{
    const std::string type = config.string("polygon.type");
    if (type == "ngon") {
        const std::size_t sides = config.index("polygon.sides");
        if (sides < 3) {
            throw ConfigError(config.line_of("polygon.sides"), "polygon.sides must be at least 3");
        }
        return regular_polygon(sides, positive(config, "polygon.radius", 1.0), config.number_or("polygon.phase", 0.0));
    }
    if (type == "vertices") {
        return config.points("polygon.points");
    }
    throw ConfigError(config.line_of("polygon.type"), "unknown polygon.type '" + type + "' (ngon, vertices)");
}

std::vector<double> scenario_edge_mu(const Config& config, std::span<const PlanePoint> vertices)
{
    const std::size_t edges = vertices.empty() ? 0 : vertices.size() - 1;
    const std::string key = "polarization.mu";
    if (config.string(key) == "arclength") {
        std::vector<double> mu;
        for (std::size_t e = 0; e < edges; ++e) {
            mu.push_back(1.0 / std::norm(vertices[e + 1] - vertices[e]));
        }
        return mu;
    }
    std::vector<double> mu = config.numbers(key);
    if (mu.size() == 1) {
        return std::vector<double>(edges, mu.front());
    }
    if (mu.size() != edges) {
        throw ConfigError(config.line_of(key),
            key + " lists " + std::to_string(mu.size()) + " values for " + std::to_string(edges) + " edges");
    }
    return mu;
}

int run(const RunOptions& options, std::ostream& out, std::ostream& err)
{
    try {
        if (!options.config && needs_config(options.command)) {
            throw ConfigError(0, std::string(command_name(options.command)) + " needs --config");
        }
        if (options.h && !(*options.h > 0.0)) {
            throw ConfigError(0, "--h must be positive");
        }
        if (options.tol && !(*options.tol > 0.0)) {
            throw ConfigError(0, "--tol must be positive");
        }
        Config config = options.config ? Config::load(*options.config) : Config{};
        return Runner(options, std::move(config), out, err).dispatch();
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        const bool validation = e.kind() == ErrorKind::InvalidArgument || e.kind() == ErrorKind::NotArclengthPolarized;
        return validation ? kExitValidation : kExitNumerical;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}

} // namespace dflow
