#include "dflow/semidiscrete.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dflow/darboux.hpp"
#include "dflow/error.hpp"

namespace dflow {

PolarizedCurve propagate_edge(const PolarizedCurve& source, double mu_edge, PlanePoint initial_point,
    EdgeDirection /*direction*/, std::size_t start)
{
    return darboux_transform(source, DarbouxParams{mu_edge, initial_point}, start);
}

Sheet infinitesimal_darboux(const FlowSpec& spec)
{
    const auto vertices = spec.base.vertices();
    const auto mu = spec.base.mu();
    const std::size_t n0 = spec.initial_index;
    const PolarizedCurve& seed = spec.initial_curve;
    const SGrid& grid = seed.grid();

    if (n0 >= vertices.size()) {
        throw Error(ErrorKind::InvalidArgument, "initial index outside the discrete curve", n0);
    }
    if (spec.start >= grid.count()) {
        throw Error(ErrorKind::InvalidArgument, "start node outside the grid", spec.start);
    }
    if (std::abs(seed.point(spec.start) - vertices[n0]) > 1e-10) {
        throw Error(ErrorKind::InvalidArgument, "initial curve does not pass through its base vertex", n0);
    }
    spec.m.validate_on(grid);
    for (std::size_t i = 0; i < grid.count(); ++i) {
        const double s = grid.at(i);
        if (std::abs(seed.polarization().at(s) - spec.m.at(s)) > 1e-12 * std::abs(spec.m.at(s))) {
            throw Error(ErrorKind::InvalidArgument, "initial curve carries a different polarization", i);
        }
    }

    std::vector<PolarizedCurve> rows(vertices.size(), seed);
    const auto run_edge = [&](std::size_t from, std::size_t to, std::size_t edge, EdgeDirection dir) {
        try {
            rows[to] = propagate_edge(rows[from], mu[edge], vertices[to], dir, spec.start);
        } catch (const Error& e) {
            throw Error(e.kind(), "on edge " + std::to_string(edge) + ": " + e.what(), edge);
        }
    };
    for (std::size_t n = n0; n + 1 < vertices.size(); ++n) {
        run_edge(n, n + 1, n, EdgeDirection::Forward);
    }
    for (std::size_t n = n0; n > 0; --n) {
        run_edge(n, n - 1, n - 1, EdgeDirection::Backward);
    }

    std::vector<std::vector<PlanePoint>> points;
    std::vector<std::vector<PlanePoint>> tangents;
    const bool with_tangents = std::all_of(rows.begin(), rows.end(),
        [](const PolarizedCurve& c) { return c.differentiable(); });
    for (const auto& r : rows) {
        points.emplace_back(r.points().begin(), r.points().end());
        if (with_tangents) {
            std::vector<PlanePoint> t(grid.count());
            for (std::size_t i = 0; i < grid.count(); ++i) {
                t[i] = r.derivative(i);
            }
            tangents.push_back(std::move(t));
        }
    }
    return Sheet(grid, std::move(points), std::move(tangents));
}

double discrete_arclength_deviation(std::span<const PlanePoint> vertices, std::span<const double> mu)
{
    if (vertices.size() != mu.size() + 1 && !(vertices.empty() && mu.empty())) {
        throw Error(ErrorKind::InvalidArgument, "need exactly one mu per edge");
    }
    double worst = 0.0;
    for (std::size_t e = 0; e < mu.size(); ++e) {
        worst = std::max(worst, std::abs(1.0 / mu[e] - std::norm(vertices[e] - vertices[e + 1])));
    }
    return worst;
}

double is_discrete_arclength(const DiscretePolarizedCurve& curve)
{
    return discrete_arclength_deviation(curve.vertices(), curve.mu());
}

ArclengthFlowReport arclength_flow_check(const Sheet& sheet, std::span<const double> mu, const Polarization& m)
{
    const SGrid& grid = sheet.grid();
    ArclengthFlowReport report;
    report.column_deviation_by_node.resize(grid.count());
    for (std::size_t i = 0; i < grid.count(); ++i) {
        const double d = discrete_arclength_deviation(sheet.column(i), mu);
        report.column_deviation_by_node[i] = d;
        report.column_deviation = std::max(report.column_deviation, d);
    }
    for (std::size_t n = 0; n < sheet.row_count(); ++n) {
        const auto d = sheet.row_derivative(n);
        for (std::size_t i = 0; i < grid.count(); ++i) {
            report.row_deviation = std::max(report.row_deviation, std::abs(1.0 / m.at(grid.at(i)) - std::norm(d[i])));
        }
    }
    return report;
}

std::vector<double> edge_cross_ratio_defects(const Sheet& sheet, std::span<const double> mu, const Polarization& m)
{
    if (sheet.row_count() != mu.size() + 1) {
        throw Error(ErrorKind::InvalidArgument, "need exactly one mu per edge");
    }
    const SGrid& grid = sheet.grid();
    std::vector<std::vector<PlanePoint>> d;
    for (std::size_t n = 0; n < sheet.row_count(); ++n) {
        d.push_back(sheet.row_derivative(n));
    }
    std::vector<double> out(mu.size(), 0.0);
    for (std::size_t e = 0; e < mu.size(); ++e) {
        for (std::size_t i = 0; i < grid.count(); ++i) {
            const auto cr = tangential_cross_ratio(sheet.at(e, i), d[e][i], sheet.at(e + 1, i), d[e + 1][i]);
            out[e] = std::max(out[e], std::abs(m.at(grid.at(i)) * cr - mu[e]));
        }
    }
    return out;
}

} // namespace dflow
