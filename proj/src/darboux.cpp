#include "dflow/darboux.hpp"

#include <algorithm>
#include <cmath>

#include "dflow/error.hpp"
#include "dflow/finite_difference.hpp"
#include "dflow/ode.hpp"

namespace dflow {

PlanePoint riccati_rhs(PlanePoint x, PlanePoint xp, PlanePoint xh, double mu_over_m, double eps)
{
    if (std::abs(xp) <= eps) {
        throw Error(ErrorKind::SingularTangent, "source tangent vanishes");
    }
    const PlanePoint d = x - xh;
    return mu_over_m * d * d / xp;
}

PolarizedCurve darboux_transform(const PolarizedCurve& curve, const DarbouxParams& params, std::size_t start)
{
    if (params.mu == 0.0 || !std::isfinite(params.mu)) {
        throw Error(ErrorKind::InvalidArgument, "mu must be finite and nonzero");
    }
    const SGrid& grid = curve.grid();
    const double eps = curve.regularity_epsilon();
    if (start >= grid.count()) {
        throw Error(ErrorKind::InvalidArgument, "start node outside the grid", start);
    }
    if (std::abs(params.initial_point - curve.point(start)) <= eps) {
        throw Error(ErrorKind::CoincidentPoints, "initial point lies on the curve", start);
    }

    const Polarization& m = curve.polarization();
    const double mu = params.mu;
    OdeProblem problem{grid,
        [&](double s, PlanePoint xh) {
            const CurveJet j = curve.jet(s);
            return riccati_rhs(j.x, j.dx, xh, mu / m.at(s), eps);
        },
        params.initial_point};
    std::vector<PlanePoint> points = integrate_rk4(problem, start);

    std::vector<PlanePoint> tangents;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (std::abs(points[i] - curve.point(i)) <= eps) {
            throw Error(ErrorKind::CoincidentPoints, "transform meets the curve", i);
        }
        if (curve.differentiable()) {
            tangents.push_back(riccati_rhs(curve.point(i), curve.derivative(i), points[i], mu / curve.m(i), eps));
        }
    }
    return PolarizedCurve::sampled(grid, std::move(points), m, std::move(tangents), eps);
}

PairSample pair_diagnostics(PlanePoint x, PlanePoint xp, PlanePoint xh, PlanePoint xhp, double mu_over_m,
    double eps)
{
    PairSample out;
    out.cr = tangential_cross_ratio(x, xp, xh, xhp, eps);
    out.lambda = std::norm(xh - x);
    out.r = 2.0 * dot(xh - x, xp) / out.lambda;
    out.r_hat = 2.0 * dot(x - xh, xhp) / out.lambda;
    if (std::abs(out.r) > eps) {
        out.y = x + xp / out.r;
        out.ratio_residual = out.r_hat / out.r + out.lambda / std::norm(xp) * mu_over_m;
    } else {
        out.degenerate = true;
    }
    return out;
}

std::vector<PairSample> diagnose_pair(const PolarizedCurve& x, const PolarizedCurve& xh, double mu)
{
    const SGrid& grid = x.grid();
    if (xh.grid().count() != grid.count()) {
        throw Error(ErrorKind::InvalidArgument, "pair curves must share a grid");
    }
    std::vector<PairSample> out;
    out.reserve(grid.count());
    for (std::size_t i = 0; i < grid.count(); ++i) {
        PairSample p = pair_diagnostics(x.point(i), x.derivative(i), xh.point(i), xh.derivative(i), mu / x.m(i),
            x.regularity_epsilon());
        p.s = grid.at(i);
        out.push_back(p);
    }
    return out;
}

double smooth_arclength_deviation(const PolarizedCurve& curve)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < curve.grid().count(); ++i) {
        worst = std::max(worst, std::abs(1.0 / curve.m(i) - std::norm(curve.derivative(i))));
    }
    return worst;
}

PolarizedCurve arclength_darboux(const PolarizedCurve& curve, double mu, double offset_angle, std::size_t start)
{
    if (!(mu > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "arc-length transforms need mu > 0");
    }
    constexpr double kArclengthTolerance = 1e-8;
    for (std::size_t i = 0; i < curve.grid().count(); ++i) {
        if (std::abs(1.0 / curve.m(i) - std::norm(curve.derivative(i))) > kArclengthTolerance) {
            throw Error(ErrorKind::NotArclengthPolarized, "1/m differs from |x'|^2", i);
        }
    }
    const PlanePoint initial = curve.point(start) + std::polar(1.0 / std::sqrt(mu), offset_angle);
    return darboux_transform(curve, DarbouxParams{mu, initial}, start);
}

double cross_ratio_defect(const PolarizedCurve& x_in, const PolarizedCurve& xh_in, double mu)
{
    const PolarizedCurve x = x_in.with_fd_tangents();
    const PolarizedCurve xh = xh_in.with_fd_tangents();
    double worst = 0.0;
    for (std::size_t i = 0; i < x.grid().count(); ++i) {
        const auto cr = tangential_cross_ratio(x.point(i), x.derivative(i), xh.point(i), xh.derivative(i),
            x.regularity_epsilon());
        worst = std::max(worst, std::abs(x.m(i) * cr - mu));
    }
    return worst;
}

PairIdentityReport check_pair_identities(const PolarizedCurve& x_in, const PolarizedCurve& xh_in, double mu)
{
    const PolarizedCurve x = x_in.with_fd_tangents();
    const PolarizedCurve xh = xh_in.with_fd_tangents();
    const auto samples = diagnose_pair(x, xh, mu);
    PairIdentityReport report;

    std::vector<double> lambda;
    lambda.reserve(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const PairSample& p = samples[i];
        lambda.push_back(p.lambda);
        const PlanePoint xp = x.derivative(i);
        const PlanePoint xhp = xh.derivative(i);
        const double predicted = -p.r * p.lambda / std::norm(xp) * mu / x.m(i);
        const double scale = 2.0 * (std::abs(xp) + std::abs(xhp)) / std::sqrt(p.lambda);
        report.ratio_identity = std::max(report.ratio_identity, std::abs(p.r_hat - predicted) / scale);
        const PlanePoint centers = p.r * p.r_hat * (x.point(i) - xh.point(i)) + p.r_hat * xp - p.r * xhp;
        report.center_agreement
            = std::max(report.center_agreement, std::abs(centers) / (scale * (std::abs(xp) + std::abs(xhp))));
        if (p.degenerate) {
            ++report.degenerate_nodes;
            continue;
        }
        const double dx = std::abs(x.point(i) - *p.y);
        const double dxh = std::abs(xh.point(i) - *p.y);
        report.equidistance = std::max(report.equidistance, std::abs(dx - dxh) / std::max(dx, dxh));
    }

    if (samples.size() >= fd::kFirstDerivativeMinNodes) {
        const double h = x.grid().step();
        for (std::size_t i = 0; i < samples.size(); ++i) {
            const PairSample& p = samples[i];
            const double rate = fd::derivative<double>(lambda, h, i);
            const double sum_form = (-p.r_hat - p.r) * p.lambda;
            const double logistic_form = p.r * (mu * p.lambda / (x.m(i) * std::norm(x.derivative(i))) - 1.0) * p.lambda;
            report.lambda_rate_sum = std::max(report.lambda_rate_sum, std::abs(rate - sum_form));
            report.lambda_rate_logistic = std::max(report.lambda_rate_logistic, std::abs(rate - logistic_form));
        }
    }
    return report;
}

} // namespace dflow
