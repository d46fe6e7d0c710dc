#include "dflow/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "dflow/error.hpp"
#include "dflow/finite_difference.hpp"

namespace dflow {

PlanePoint rotate(PlanePoint p, double angle)
{
    return std::polar(1.0, angle) * p;
}

// --- SGrid -----------------------------------------------------------------

SGrid::SGrid(double s0, double h, std::size_t count)
    : s0_(s0)
    , h_(h)
    , count_(count)
{
    if (!std::isfinite(s0) || !std::isfinite(h) || !(h > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "grid needs finite s0 and a positive step");
    }
    if (count == 0) {
        throw Error(ErrorKind::InvalidArgument, "grid needs at least one node");
    }
}

SGrid SGrid::covering(double s0, double s1, double nominal_h)
{
    if (!std::isfinite(s0) || !std::isfinite(s1) || s1 < s0) {
        throw Error(ErrorKind::InvalidArgument, "grid range must be finite with s1 >= s0");
    }
    if (!(nominal_h > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "grid step must be positive");
    }
    const double span = s1 - s0;
    if (span == 0.0) {
        return SGrid(s0, nominal_h, 1);
    }
    // Tolerate a ratio that is an integer up to rounding.
    const double ratio = span / nominal_h;
    auto intervals = static_cast<std::size_t>(std::ceil(ratio - 1e-9 * ratio));
    intervals = std::max<std::size_t>(intervals, 1);
    return SGrid(s0, span / static_cast<double>(intervals), intervals + 1);
}

SGrid SGrid::refined() const
{
    if (count_ == 1) {
        return SGrid(s0_, h_ / 2.0, 1);
    }
    return SGrid(s0_, h_ / 2.0, 2 * count_ - 1);
}

// --- Polarization ----------------------------------------------------------

Polarization Polarization::constant(double value)
{
    Polarization p;
    p.constant_ = value;
    return p;
}

Polarization Polarization::function(std::function<double(double)> m)
{
    if (!m) {
        throw Error(ErrorKind::InvalidArgument, "empty polarization function");
    }
    Polarization p;
    p.function_ = std::move(m);
    return p;
}

Polarization Polarization::sampled(SGrid grid, std::vector<double> values)
{
    if (values.size() != grid.count()) {
        throw Error(ErrorKind::InvalidArgument, "polarization samples do not match the grid");
    }
    Polarization p;
    p.grid_ = grid;
    p.samples_ = std::move(values);
    return p;
}

double Polarization::at(double s) const
{
    if (constant_) {
        return *constant_;
    }
    if (function_) {
        return function_(s);
    }
    return fd::interpolate<double>(samples_, grid_->index_of(s));
}

void Polarization::validate_on(const SGrid& grid) const
{
    const double first = at(grid.at(0));
    for (std::size_t i = 0; i < grid.count(); ++i) {
        const double v = at(grid.at(i));
        if (!std::isfinite(v) || v == 0.0 || (v > 0.0) != (first > 0.0)) {
            throw Error(ErrorKind::InvalidArgument,
                "polarization m must be finite, nonzero and of one sign on the grid", i);
        }
    }
}

// --- PolarizedCurve --------------------------------------------------------

PolarizedCurve::PolarizedCurve(SGrid grid, Polarization m, double eps)
    : grid_(grid)
    , m_(std::move(m))
    , eps_(eps)
{
}

PolarizedCurve PolarizedCurve::analytic(SGrid grid, Generator x, Generator dx, Polarization m, double eps)
{
    if (!x || !dx) {
        throw Error(ErrorKind::InvalidArgument, "analytic curve needs both x(s) and x'(s)");
    }
    PolarizedCurve curve(grid, std::move(m), eps);
    curve.points_.reserve(grid.count());
    for (std::size_t i = 0; i < grid.count(); ++i) {
        curve.points_.push_back(x(grid.at(i)));
    }
    curve.x_ = std::move(x);
    curve.dx_ = std::move(dx);
    curve.validate();
    return curve;
}

PolarizedCurve PolarizedCurve::sampled(SGrid grid, std::vector<PlanePoint> points, Polarization m,
    std::vector<PlanePoint> tangents, double eps)
{
    if (points.size() != grid.count()) {
        throw Error(ErrorKind::InvalidArgument, "curve samples do not match the grid");
    }
    if (!tangents.empty() && tangents.size() != grid.count()) {
        throw Error(ErrorKind::InvalidArgument, "tangent samples do not match the grid");
    }
    PolarizedCurve curve(grid, std::move(m), eps);
    curve.points_ = std::move(points);
    curve.tangents_ = std::move(tangents);
    if (curve.tangents_.empty() && grid.count() >= fd::kFirstDerivativeMinNodes) {
        curve.fd_tangents_.resize(grid.count());
        for (std::size_t i = 0; i < grid.count(); ++i) {
            curve.fd_tangents_[i] = fd::derivative<PlanePoint>(curve.points_, grid.step(), i);
        }
    }
    curve.validate();
    return curve;
}

void PolarizedCurve::validate() const
{
    m_.validate_on(grid_);
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!is_finite(points_[i])) {
            throw Error(ErrorKind::InvalidArgument, "non-finite curve sample", i);
        }
    }
    // Regularity can only be judged where a tangent is available.
    if (differentiable()) {
        for (std::size_t i = 0; i < grid_.count(); ++i) {
            if (std::abs(derivative(i)) <= eps_) {
                throw Error(ErrorKind::SingularTangent, "curve is not regular", i);
            }
        }
    }
}

std::span<const PlanePoint> PolarizedCurve::tangent_samples() const
{
    if (!tangents_.empty()) {
        return tangents_;
    }
    if (fd_tangents_.empty()) {
        throw Error(ErrorKind::GridTooShort, "finite-difference tangents need at least 5 nodes");
    }
    return fd_tangents_;
}

PlanePoint PolarizedCurve::derivative(std::size_t i) const
{
    if (i >= grid_.count()) {
        throw Error(ErrorKind::InvalidArgument, "grid index out of range", i);
    }
    if (dx_) {
        return dx_(grid_.at(i));
    }
    if (!tangents_.empty()) {
        return tangents_[i];
    }
    if (!fd_tangents_.empty()) {
        return fd_tangents_[i];
    }
    return fd::derivative<PlanePoint>(points_, grid_.step(), i);
}

PolarizedCurve PolarizedCurve::with_fd_tangents() const
{
    if (has_generator() || grid_.count() < fd::kFirstDerivativeMinNodes) {
        return *this;
    }
    return sampled(grid_, points_, m_, {}, eps_);
}

CurveJet PolarizedCurve::jet(double s) const
{
    if (x_) {
        return {x_(s), dx_(s)};
    }
    const double t = grid_.index_of(s);
    const double nearest = std::round(t);
    if (std::abs(t - nearest) < 1e-9 && nearest >= 0.0 && nearest < static_cast<double>(grid_.count())) {
        const auto i = static_cast<std::size_t>(nearest);
        return {points_[i], derivative(i)};
    }
    return {fd::interpolate<PlanePoint>(points_, t), fd::interpolate<PlanePoint>(tangent_samples(), t)};
}

PlanePoint derivative(const PolarizedCurve& curve, std::size_t i)
{
    return curve.derivative(i);
}

std::complex<double> tangential_cross_ratio(PlanePoint x, PlanePoint xp, PlanePoint xh, PlanePoint xhp, double eps)
{
    const PlanePoint d = x - xh;
    if (std::abs(d) <= eps) {
        throw Error(ErrorKind::CoincidentPoints, "tangential cross ratio of coincident points");
    }
    return xp * xhp / (d * d);
}

// --- DiscretePolarizedCurve ------------------------------------------------

void require_regular(std::span<const PlanePoint> vertices, double eps)
{
    for (std::size_t n = 0; n < vertices.size(); ++n) {
        if (!is_finite(vertices[n])) {
            throw Error(ErrorKind::NonRegular, "non-finite vertex", n);
        }
    }
    for (std::size_t n = 0; n + 1 < vertices.size(); ++n) {
        if (std::abs(vertices[n + 1] - vertices[n]) <= eps) {
            throw Error(ErrorKind::NonRegular, "consecutive vertices coincide", n);
        }
    }
    for (std::size_t n = 1; n + 1 < vertices.size(); ++n) {
        const PlanePoint back = vertices[n] - vertices[n - 1];
        const PlanePoint ahead = vertices[n + 1] - vertices[n];
        if (std::abs(det(back, ahead)) <= eps * std::abs(back) * std::abs(ahead)) {
            throw Error(ErrorKind::NonRegular, "three consecutive vertices are collinear", n);
        }
    }
}

DiscretePolarizedCurve::DiscretePolarizedCurve(std::vector<PlanePoint> vertices, std::vector<double> mu, double eps)
    : vertices_(std::move(vertices))
    , mu_(std::move(mu))
{
    if (vertices_.empty()) {
        throw Error(ErrorKind::InvalidArgument, "discrete curve needs at least one vertex");
    }
    if (mu_.size() + 1 != vertices_.size()) {
        throw Error(ErrorKind::InvalidArgument, "need exactly one mu per edge");
    }
    for (std::size_t e = 0; e < mu_.size(); ++e) {
        if (!std::isfinite(mu_[e]) || mu_[e] == 0.0 || (mu_[e] > 0.0) != (mu_[0] > 0.0)) {
            throw Error(ErrorKind::InvalidArgument, "edge weights must be nonzero and of one sign", e);
        }
    }
    for (std::size_t n = 0; n + 1 < vertices_.size(); ++n) {
        if (!is_finite(vertices_[n]) || std::abs(vertices_[n + 1] - vertices_[n]) <= eps) {
            throw Error(ErrorKind::NonRegular, "consecutive vertices coincide", n);
        }
    }
}

DiscretePolarizedCurve DiscretePolarizedCurve::with_arclength_polarization(std::vector<PlanePoint> vertices,
    double eps)
{
    std::vector<double> mu;
    for (std::size_t n = 0; n + 1 < vertices.size(); ++n) {
        mu.push_back(1.0 / std::norm(vertices[n + 1] - vertices[n]));
    }
    return DiscretePolarizedCurve(std::move(vertices), std::move(mu), eps);
}

// --- Sheet -----------------------------------------------------------------

Sheet::Sheet(SGrid grid, std::vector<std::vector<PlanePoint>> rows, std::vector<std::vector<PlanePoint>> tangents)
    : grid_(grid)
    , rows_(std::move(rows))
    , tangents_(std::move(tangents))
{
    for (const auto& r : rows_) {
        if (r.size() != grid_.count()) {
            throw Error(ErrorKind::InvalidArgument, "sheet row does not match the grid");
        }
    }
    if (!tangents_.empty()) {
        if (tangents_.size() != rows_.size()) {
            throw Error(ErrorKind::InvalidArgument, "sheet tangents do not match the rows");
        }
        for (const auto& r : tangents_) {
            if (r.size() != grid_.count()) {
                throw Error(ErrorKind::InvalidArgument, "sheet tangent row does not match the grid");
            }
        }
    }
}

std::vector<PlanePoint> Sheet::column(std::size_t i) const
{
    std::vector<PlanePoint> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) {
        out.push_back(r.at(i));
    }
    return out;
}

PolarizedCurve Sheet::row_curve(std::size_t n, const Polarization& m) const
{
    std::vector<PlanePoint> t;
    if (has_tangents()) {
        t = tangents_.at(n);
    }
    return PolarizedCurve::sampled(grid_, rows_.at(n), m, std::move(t));
}

std::vector<PlanePoint> Sheet::row_derivative(std::size_t n) const
{
    const auto& r = rows_.at(n);
    if (r.size() < fd::kFirstDerivativeMinNodes) {
        if (has_tangents()) {
            return tangents_.at(n);
        }
        throw Error(ErrorKind::GridTooShort, "row derivative needs at least 5 nodes");
    }
    std::vector<PlanePoint> d(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        d[i] = fd::derivative<PlanePoint>(r, grid_.step(), i);
    }
    return d;
}

double sup_distance(const Sheet& a, const Sheet& b)
{
    if (a.row_count() != b.row_count() || a.grid().count() != b.grid().count()) {
        throw Error(ErrorKind::InvalidArgument, "sheets differ in shape");
    }
    double worst = 0.0;
    for (std::size_t n = 0; n < a.row_count(); ++n) {
        for (std::size_t i = 0; i < a.grid().count(); ++i) {
            worst = std::max(worst, std::abs(a.at(n, i) - b.at(n, i)));
        }
    }
    return worst;
}

} // namespace dflow
