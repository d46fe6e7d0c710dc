#include "dflow/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dflow/error.hpp"
#include "dflow/finite_difference.hpp"
#include "dflow/semidiscrete.hpp"

namespace dflow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_to_pi(double angle)
{
    return std::remainder(angle, kTwoPi);
}

} // namespace

IsoDarbouxReport iso_darboux_check(const Sheet& sheet, std::span<const double> edge_lengths)
{
    if (sheet.row_count() != edge_lengths.size() + 1) {
        throw Error(ErrorKind::InvalidArgument, "need one edge length per edge");
    }
    std::vector<std::vector<PlanePoint>> d;
    for (std::size_t n = 0; n < sheet.row_count(); ++n) {
        d.push_back(sheet.row_derivative(n));
    }
    IsoDarbouxReport report;
    for (std::size_t e = 0; e < edge_lengths.size(); ++e) {
        const double expected = 1.0 / (edge_lengths[e] * edge_lengths[e]);
        for (std::size_t i = 0; i < sheet.grid().count(); ++i) {
            const auto cr = tangential_cross_ratio(sheet.at(e, i), d[e][i], sheet.at(e + 1, i), d[e + 1][i]);
            report.defect = std::max(report.defect, std::abs(cr - expected));
            report.max_imag = std::max(report.max_imag, std::abs(cr.imag()));
        }
    }
    return report;
}

std::vector<std::vector<double>> tangential_angles(const Sheet& sheet)
{
    const std::size_t rows = sheet.row_count();
    const std::size_t count = sheet.grid().count();
    std::vector<std::vector<double>> theta(rows, std::vector<double>(count));
    if (rows == 0) {
        return theta;
    }
    std::vector<std::vector<PlanePoint>> d;
    for (std::size_t n = 0; n < rows; ++n) {
        d.push_back(sheet.row_derivative(n));
    }
    theta[0][0] = std::arg(d[0][0]);
    for (std::size_t n = 0; n + 1 < rows; ++n) {
        const double edge_direction = std::arg(sheet.at(n + 1, 0) - sheet.at(n, 0));
        const double target = 2.0 * edge_direction - theta[n][0];
        theta[n + 1][0] = target + wrap_to_pi(std::arg(d[n + 1][0]) - target);
    }
    for (std::size_t n = 0; n < rows; ++n) {
        for (std::size_t i = 1; i < count; ++i) {
            const double previous = theta[n][i - 1];
            theta[n][i] = previous + wrap_to_pi(std::arg(d[n][i]) - previous);
        }
    }
    return theta;
}

double sheet_mkdv_residual(const Sheet& sheet, std::span<const double> edge_lengths)
{
    const std::size_t rows = sheet.row_count();
    if (rows != edge_lengths.size() + 1) {
        throw Error(ErrorKind::InvalidArgument, "need one edge length per edge");
    }
    const SGrid& grid = sheet.grid();
    const std::size_t count = grid.count();
    if (count < fd::kSecondDerivativeMinNodes) {
        return 0.0;
    }
    const auto theta = tangential_angles(sheet);
    std::vector<std::vector<double>> rate(rows, std::vector<double>(count));
    for (std::size_t n = 0; n < rows; ++n) {
        const auto row = sheet.row(n);
        for (std::size_t i = 0; i < count; ++i) {
            const PlanePoint d1 = fd::derivative<PlanePoint>(row, grid.step(), i);
            const PlanePoint d2 = fd::second_derivative<PlanePoint>(row, grid.step(), i);
            rate[n][i] = det(d1, d2) / std::norm(d1);
        }
    }
    double worst = 0.0;
    for (std::size_t n = 0; n + 1 < rows; ++n) {
        for (std::size_t i = 0; i < count; ++i) {
            const double lhs = 0.5 * (rate[n][i] + rate[n + 1][i]);
            const double rhs = 2.0 / edge_lengths[n] * std::sin(0.5 * (theta[n + 1][i] - theta[n][i]));
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    return worst;
}

double frameless_identity_check(const Sheet& sheet, const std::vector<std::vector<double>>& theta,
    std::span<const double> mu)
{
    using namespace std::complex_literals;
    const std::size_t rows = sheet.row_count();
    if (theta.size() != rows || mu.size() + 1 != rows) {
        throw Error(ErrorKind::InvalidArgument, "theta and mu do not match the sheet");
    }
    const SGrid& grid = sheet.grid();
    const std::size_t count = grid.count();
    if (count < fd::kFirstDerivativeMinNodes) {
        return 0.0;
    }
    const double h = grid.step();

    double worst = 0.0;
    for (std::size_t n = 0; n + 1 < rows; ++n) {
        const auto& t0 = theta[n];
        const auto& t1 = theta[n + 1];
        std::vector<PlanePoint> product(count);
        std::vector<double> mean(count);
        for (std::size_t i = 0; i < count; ++i) {
            product[i] = std::polar(1.0, t0[i] + t1[i]);
            mean[i] = 0.5 * (t0[i] + t1[i]);
        }
        const double root_mu = std::sqrt(mu[n]);
        for (std::size_t i = 2; i + 2 < count; ++i) {
            const PlanePoint e0 = std::polar(1.0, t0[i]);
            const PlanePoint e1 = std::polar(1.0, t1[i]);
            const PlanePoint via_cross_ratio
                = 2.0 * root_mu * (e1 - e0) * std::polar(1.0, 0.5 * t0[i]) * std::polar(1.0, 0.5 * t1[i]);
            const double dt0 = fd::derivative<double>(t0, h, i);
            const double dt1 = fd::derivative<double>(t1, h, i);
            const PlanePoint via_curvature = 1i * (dt1 + dt0) * e0 * e1;
            const PlanePoint direct = fd::derivative<PlanePoint>(product, h, i);

            const double branch = std::min(std::abs(via_cross_ratio - via_curvature),
                std::abs(-via_cross_ratio - via_curvature));
            const double product_rule = std::abs(direct - via_curvature);

            const double length = std::abs(sheet.at(n + 1, i) - sheet.at(n, i));
            const double lhs = fd::derivative<double>(mean, h, i);
            const double rhs = 2.0 / length * std::sin(0.5 * (t1[i] - t0[i]));
            worst = std::max({worst, branch, product_rule, std::abs(lhs - rhs)});
        }
    }
    return worst;
}

PipelineRun run_pipelines(std::span<const PlanePoint> curve0, double w0, std::size_t n0, const SGrid& grid)
{
    MotionResult motion = integrate_motion(curve0, w0, n0, grid);
    const std::vector<double> a0 = motion.initial_edge_lengths();
    std::vector<double> mu;
    mu.reserve(a0.size());
    for (double a : a0) {
        mu.push_back(1.0 / (a * a));
    }

    const Polarization unit = Polarization::constant(1.0);
    FlowSpec spec{DiscretePolarizedCurve(std::vector<PlanePoint>(curve0.begin(), curve0.end()), mu), unit, n0,
        motion.sheet.row_curve(n0, unit), 0};
    Sheet flow = infinitesimal_darboux(spec);

    EquivalenceReport r;
    r.sup_distance = sup_distance(motion.sheet, flow);
    for (const Sheet* sheet : {&motion.sheet, &flow}) {
        const auto cr = edge_cross_ratio_defects(*sheet, mu, unit);
        if (!cr.empty()) {
            r.cross_ratio_defect = std::max(r.cross_ratio_defect, *std::max_element(cr.begin(), cr.end()));
        }
        const auto arc = arclength_flow_check(*sheet, mu, unit);
        r.arclength_defect = std::max({r.arclength_defect, arc.column_deviation, arc.row_deviation});
    }
    r.mkdv_residual = std::max(mkdv_residual(motion.theta, a0, grid), sheet_mkdv_residual(flow, a0));
    r.identity_defect = std::max(frameless_identity_check(motion.sheet, motion.theta, mu),
        frameless_identity_check(flow, tangential_angles(flow), mu));
    return PipelineRun{std::move(motion), std::move(flow), r};
}

EquivalenceReport pipelines_agree(std::span<const PlanePoint> curve0, double w0, std::size_t n0, const SGrid& grid)
{
    return run_pipelines(curve0, w0, n0, grid).report;
}

} // namespace dflow
