#pragma once

// Plane/complex arithmetic, sampling grids, polarized curves and sheets.
//
// The plane is identified with the complex numbers; a PlanePoint is a
// std::complex<double>. All curves taking part in one computation share a
// single uniform SGrid so that sheets can be compared node by node.

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace dflow {

using PlanePoint = std::complex<double>;

inline constexpr double kDefaultRegularity = 1e-9;

/// Euclidean inner product of two plane vectors.
inline double dot(PlanePoint a, PlanePoint b) noexcept
{
    return a.real() * b.real() + a.imag() * b.imag();
}

/// det(a b) with a and b as columns.
inline double det(PlanePoint a, PlanePoint b) noexcept
{
    return a.real() * b.imag() - a.imag() * b.real();
}

inline bool is_finite(PlanePoint p) noexcept
{
    return std::isfinite(p.real()) && std::isfinite(p.imag());
}

/// Counterclockwise rotation about the origin.
PlanePoint rotate(PlanePoint p, double angle);

/// Uniform grid s_i = s0 + i*h, i = 0..count-1.
///
/// A one-node grid is admitted; it is the degenerate "no integration" case.
class SGrid {
public:
    SGrid(double s0, double h, std::size_t count);

    /// Grid covering [s0, s1] exactly. The step is the largest value not
    /// exceeding nominal_h that divides the span evenly. s1 == s0 gives a
    /// one-node grid.
    static SGrid covering(double s0, double s1, double nominal_h);

    double s0() const noexcept { return s0_; }
    double s1() const noexcept { return s0_ + static_cast<double>(count_ - 1) * h_; }
    double step() const noexcept { return h_; }
    std::size_t count() const noexcept { return count_; }
    double at(std::size_t i) const noexcept { return s0_ + static_cast<double>(i) * h_; }

    /// Fractional node index of parameter value s.
    double index_of(double s) const noexcept { return (s - s0_) / h_; }

    /// Same span, half the step.
    SGrid refined() const;

private:
    double s0_;
    double h_;
    std::size_t count_;
};

/// The polarization density m of ds^2/m: a nonvanishing real function of s,
/// given either in closed form or as samples on a grid.
class Polarization {
public:
    static Polarization constant(double value);
    static Polarization function(std::function<double(double)> m);
    static Polarization sampled(SGrid grid, std::vector<double> values);

    double at(double s) const;
    bool is_constant() const noexcept { return constant_.has_value(); }

    /// Throws InvalidArgument unless m is nonzero with one sign on every node.
    void validate_on(const SGrid& grid) const;

private:
    Polarization() = default;

    std::optional<double> constant_;
    std::function<double(double)> function_;
    std::optional<SGrid> grid_;
    std::vector<double> samples_;
};

/// Position and tangent of a curve at one parameter value.
struct CurveJet {
    PlanePoint x;
    PlanePoint dx;
};

/// A smooth plane curve sampled on a grid, polarized by ds^2/m.
///
/// Tangents come from an analytic generator when one is present, from stored
/// tangent samples when the curve was produced by an ODE, and from
/// fourth-order finite differences otherwise.
class PolarizedCurve {
public:
    using Generator = std::function<PlanePoint(double)>;

    static PolarizedCurve analytic(SGrid grid, Generator x, Generator dx, Polarization m,
        double eps = kDefaultRegularity);
    static PolarizedCurve sampled(SGrid grid, std::vector<PlanePoint> points, Polarization m,
        std::vector<PlanePoint> tangents = {}, double eps = kDefaultRegularity);

    const SGrid& grid() const noexcept { return grid_; }
    const Polarization& polarization() const noexcept { return m_; }
    std::span<const PlanePoint> points() const noexcept { return points_; }
    PlanePoint point(std::size_t i) const { return points_.at(i); }
    double m(std::size_t i) const { return m_.at(grid_.at(i)); }
    bool has_generator() const noexcept { return static_cast<bool>(x_); }
    bool has_tangent_samples() const noexcept { return !tangents_.empty(); }
    /// False only for short sampled curves without stored tangents.
    bool differentiable() const noexcept { return has_generator() || has_tangent_samples() || !fd_tangents_.empty(); }
    double regularity_epsilon() const noexcept { return eps_; }

    /// x'(s_i).
    PlanePoint derivative(std::size_t i) const;

    /// Copy whose tangents come from finite differences of the samples rather
    /// than stored values. Analytic curves and curves too short for the
    /// stencil are returned unchanged.
    PolarizedCurve with_fd_tangents() const;

    /// Position and tangent anywhere in [s0, s1]. Off-node values of sampled
    /// curves come from local sixth-order interpolation; used for the
    /// intermediate stages of the Runge-Kutta integrator.
    CurveJet jet(double s) const;

private:
    PolarizedCurve(SGrid grid, Polarization m, double eps);
    void validate() const;
    std::span<const PlanePoint> tangent_samples() const;

    SGrid grid_;
    Polarization m_;
    double eps_;
    std::vector<PlanePoint> points_;
    std::vector<PlanePoint> tangents_;
    Generator x_;
    Generator dx_;
    std::vector<PlanePoint> fd_tangents_;
};

/// x'(s_i) of a curve.
PlanePoint derivative(const PolarizedCurve& curve, std::size_t i);

/// x' xh' / (x - xh)^2.
std::complex<double> tangential_cross_ratio(PlanePoint x, PlanePoint xp, PlanePoint xh, PlanePoint xhp,
    double eps = kDefaultRegularity);

/// Vertices x_n with one weight mu per (unoriented) edge.
///
/// Construction only rejects coincident consecutive vertices; the turning
/// condition is left to require_regular, since a Darboux flow is well defined
/// on collinear vertices while a discrete frame is not.
class DiscretePolarizedCurve {
public:
    DiscretePolarizedCurve(std::vector<PlanePoint> vertices, std::vector<double> mu,
        double eps = kDefaultRegularity);

    /// Gives every edge the weight 1/|x_{n+1} - x_n|^2.
    static DiscretePolarizedCurve with_arclength_polarization(std::vector<PlanePoint> vertices,
        double eps = kDefaultRegularity);

    std::span<const PlanePoint> vertices() const noexcept { return vertices_; }
    std::span<const double> mu() const noexcept { return mu_; }
    std::size_t vertex_count() const noexcept { return vertices_.size(); }
    std::size_t edge_count() const noexcept { return mu_.size(); }

private:
    std::vector<PlanePoint> vertices_;
    std::vector<double> mu_;
};

/// Throws NonRegular naming the first vertex where consecutive vertices
/// coincide or three consecutive vertices are collinear.
void require_regular(std::span<const PlanePoint> vertices, double eps = kDefaultRegularity);

/// Semi-discrete map Sigma x I -> C stored row-major: row n is the smooth
/// trajectory of vertex n, column i is the discrete curve at s_i.
class Sheet {
public:
    Sheet(SGrid grid, std::vector<std::vector<PlanePoint>> rows,
        std::vector<std::vector<PlanePoint>> tangents = {});

    const SGrid& grid() const noexcept { return grid_; }
    std::size_t row_count() const noexcept { return rows_.size(); }
    std::span<const PlanePoint> row(std::size_t n) const { return rows_.at(n); }
    PlanePoint at(std::size_t n, std::size_t i) const { return rows_.at(n).at(i); }
    std::vector<PlanePoint> column(std::size_t i) const;
    bool has_tangents() const noexcept { return !tangents_.empty(); }
    std::span<const PlanePoint> tangent_row(std::size_t n) const { return tangents_.at(n); }

    /// Row n as a polarized curve (keeps stored tangents when present).
    PolarizedCurve row_curve(std::size_t n, const Polarization& m) const;

    /// x_n'(s_i) by fourth-order finite differences of the row samples.
    /// Falls back to stored tangents on grids too short for the stencil.
    std::vector<PlanePoint> row_derivative(std::size_t n) const;

private:
    SGrid grid_;
    std::vector<std::vector<PlanePoint>> rows_;
    std::vector<std::vector<PlanePoint>> tangents_;
};

/// max |a - b| over all nodes; sheets must have the same shape.
double sup_distance(const Sheet& a, const Sheet& b);

} // namespace dflow
