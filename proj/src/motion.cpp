#include "dflow/motion.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "dflow/error.hpp"
#include "dflow/finite_difference.hpp"
#include "dflow/ode.hpp"

namespace dflow {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Largest admissible change of any recorded angle between neighbouring nodes.
constexpr double kMaxAngleStep = kPi / 2.0;

// Interior nodes are those where the central first-derivative stencil applies.
template <typename F>
void for_interior_nodes(std::size_t count, F&& f)
{
    if (count < fd::kFirstDerivativeMinNodes) {
        return;
    }
    for (std::size_t i = 2; i + 2 < count; ++i) {
        f(i);
    }
}

std::vector<double> derivative_series(std::span<const double> f, double h)
{
    std::vector<double> out(f.size(), 0.0);
    if (f.size() >= fd::kFirstDerivativeMinNodes) {
        for (std::size_t i = 0; i < f.size(); ++i) {
            out[i] = fd::derivative<double>(f, h, i);
        }
    }
    return out;
}

enum class Turning { Strict, AllowStraight };

DiscreteFrameData build_frame(std::span<const PlanePoint> vertices, double eps, Turning turning)
{
    if (vertices.size() < 2) {
        throw Error(ErrorKind::NonRegular, "a discrete frame needs at least one edge");
    }
    if (turning == Turning::Strict) {
        require_regular(vertices, eps);
    } else {
        // Straight vertices (kappa = 0) are harmless for the frame; only
        // coincident vertices and fold-backs (kappa = +-pi) are not.
        for (std::size_t n = 0; n + 1 < vertices.size(); ++n) {
            if (!is_finite(vertices[n + 1]) || std::abs(vertices[n + 1] - vertices[n]) <= eps) {
                throw Error(ErrorKind::NonRegular, "consecutive vertices coincide", n);
            }
        }
        for (std::size_t n = 1; n + 1 < vertices.size(); ++n) {
            const PlanePoint back = vertices[n] - vertices[n - 1];
            const PlanePoint ahead = vertices[n + 1] - vertices[n];
            if (std::abs(det(back, ahead)) <= eps * std::abs(back) * std::abs(ahead) && dot(back, ahead) < 0.0) {
                throw Error(ErrorKind::NonRegular, "the curve folds back on itself", n);
            }
        }
    }

    DiscreteFrameData f;
    const std::size_t edges = vertices.size() - 1;
    f.a.resize(edges);
    f.tangent.resize(edges);
    f.normal.resize(edges);
    f.psi.resize(edges);
    f.kappa.assign(edges, 0.0);
    for (std::size_t n = 0; n < edges; ++n) {
        const PlanePoint e = vertices[n + 1] - vertices[n];
        f.a[n] = std::abs(e);
        f.tangent[n] = e / f.a[n];
        f.normal[n] = rotate(f.tangent[n], kPi / 2.0);
    }
    f.psi[0] = std::arg(f.tangent[0]);
    for (std::size_t n = 1; n < edges; ++n) {
        // arg(T_n / T_{n-1}) lies in (-pi, pi]; fold-backs were rejected above.
        f.kappa[n] = std::arg(f.tangent[n] / f.tangent[n - 1]);
        f.psi[n] = f.psi[n - 1] + f.kappa[n];
    }
    return f;
}

} // namespace

DiscreteFrameData discrete_frame(std::span<const PlanePoint> vertices, double eps)
{
    return build_frame(vertices, eps, Turning::Strict);
}

std::vector<double> seed_w(const DiscreteFrameData& frame, double w0, std::size_t n0)
{
    const std::size_t edges = frame.edge_count();
    if (n0 >= edges) {
        throw Error(ErrorKind::InvalidArgument, "seed index must name a vertex with an outgoing edge", n0);
    }
    std::vector<double> w(edges);
    w[n0] = w0;
    for (std::size_t n = n0; n + 1 < edges; ++n) {
        w[n + 1] = -w[n] - frame.kappa[n + 1];
    }
    for (std::size_t n = n0; n > 0; --n) {
        w[n - 1] = -w[n] - frame.kappa[n];
    }
    return w;
}

namespace {

std::vector<double> tangential_angles(const DiscreteFrameData& frame, std::span<const double> w)
{
    const std::size_t edges = frame.edge_count();
    std::vector<double> theta(edges + 1);
    for (std::size_t n = 0; n < edges; ++n) {
        theta[n] = frame.psi[n] + w[n];
    }
    theta[edges] = frame.psi[edges - 1] - w[edges - 1];
    return theta;
}

} // namespace

MotionState make_motion_state(std::vector<PlanePoint> vertices, double w0, std::size_t n0, double eps)
{
    MotionState st;
    st.frame = discrete_frame(vertices, eps);
    st.w = seed_w(st.frame, w0, n0);
    st.theta = tangential_angles(st.frame, st.w);
    st.vertices = std::move(vertices);
    return st;
}

std::vector<PlanePoint> motion_rhs(const MotionState& state)
{
    std::vector<PlanePoint> v;
    v.reserve(state.theta.size());
    for (double t : state.theta) {
        v.push_back(std::polar(1.0, t));
    }
    return v;
}

std::vector<double> MotionResult::initial_edge_lengths() const
{
    std::vector<double> out;
    out.reserve(a.size());
    for (const auto& row : a) {
        out.push_back(row.front());
    }
    return out;
}

MotionResult integrate_motion(std::span<const PlanePoint> curve0, const SeedFunction& w0, std::size_t n0,
    const SGrid& grid, double eps)
{
    if (!w0) {
        throw Error(ErrorKind::InvalidArgument, "missing seed function");
    }
    // Validates the initial curve and the seed index before integrating.
    (void)seed_w(discrete_frame(curve0, eps), w0(grid.at(0)), n0);

    const SystemRhs rhs = [&](double s, std::span<const PlanePoint> y, std::span<PlanePoint> dy) {
        const DiscreteFrameData frame = build_frame(y, eps, Turning::AllowStraight);
        const auto w = seed_w(frame, w0(s), n0);
        const auto theta = tangential_angles(frame, w);
        for (std::size_t n = 0; n < theta.size(); ++n) {
            dy[n] = std::polar(1.0, theta[n]);
        }
    };
    const auto states = integrate_rk4_system(grid, rhs, std::vector<PlanePoint>(curve0.begin(), curve0.end()));

    const std::size_t vertices = curve0.size();
    const std::size_t edges = vertices - 1;
    const std::size_t count = grid.count();

    MotionResult out{Sheet(grid, {}), {}, {}, {}, {}, {}};
    out.theta.assign(vertices, std::vector<double>(count));
    out.psi.assign(edges, std::vector<double>(count));
    out.w.assign(edges, std::vector<double>(count));
    out.kappa.assign(edges, std::vector<double>(count));
    out.a.assign(edges, std::vector<double>(count));
    std::vector<std::vector<PlanePoint>> rows(vertices, std::vector<PlanePoint>(count));
    std::vector<std::vector<PlanePoint>> tangents(vertices, std::vector<PlanePoint>(count));

    for (std::size_t i = 0; i < count; ++i) {
        DiscreteFrameData frame;
        try {
            frame = build_frame(states[i], eps, Turning::AllowStraight);
        } catch (const Error& e) {
            throw Error(ErrorKind::NonRegular, std::string("curve lost regularity during the motion: ") + e.what(), i);
        }
        // Shift the whole column by the multiple of 2 pi that keeps psi_0
        // continuous in s; the other angles follow through kappa and w.
        if (i > 0) {
            const double previous = out.psi[0][i - 1];
            const double shift = kTwoPi * std::round((previous - frame.psi[0]) / kTwoPi);
            for (double& p : frame.psi) {
                p += shift;
            }
        }
        const auto w = seed_w(frame, w0(grid.at(i)), n0);
        const auto theta = tangential_angles(frame, w);

        for (std::size_t n = 0; n < vertices; ++n) {
            rows[n][i] = states[i][n];
            tangents[n][i] = std::polar(1.0, theta[n]);
            out.theta[n][i] = theta[n];
        }
        for (std::size_t e = 0; e < edges; ++e) {
            out.psi[e][i] = frame.psi[e];
            out.w[e][i] = w[e];
            out.kappa[e][i] = frame.kappa[e];
            out.a[e][i] = frame.a[e];
        }
        if (i > 0) {
            const auto jumped = [i](const std::vector<std::vector<double>>& series) {
                return std::any_of(series.begin(), series.end(),
                    [i](const std::vector<double>& r) { return std::abs(r[i] - r[i - 1]) >= kMaxAngleStep; });
            };
            if (jumped(out.theta) || jumped(out.psi) || jumped(out.w)) {
                throw Error(ErrorKind::NonRegular, "an angle jumped by pi/2 or more between grid nodes", i);
            }
        }
    }
    out.sheet = Sheet(grid, std::move(rows), std::move(tangents));
    return out;
}

MotionResult integrate_motion(std::span<const PlanePoint> curve0, double w0, std::size_t n0, const SGrid& grid,
    double eps)
{
    return integrate_motion(curve0, SeedFunction([w0](double) { return w0; }), n0, grid, eps);
}

double mkdv_residual(const std::vector<std::vector<double>>& theta, std::span<const double> a, const SGrid& grid)
{
    if (theta.size() != a.size() + 1 && !theta.empty()) {
        throw Error(ErrorKind::InvalidArgument, "need one edge length per edge");
    }
    double worst = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) {
        std::vector<double> mean(grid.count());
        for (std::size_t i = 0; i < grid.count(); ++i) {
            mean[i] = 0.5 * (theta[n + 1][i] + theta[n][i]);
        }
        for_interior_nodes(grid.count(), [&](std::size_t i) {
            const double lhs = fd::derivative<double>(mean, grid.step(), i);
            const double rhs = 2.0 / a[n] * std::sin(0.5 * (theta[n + 1][i] - theta[n][i]));
            worst = std::max(worst, std::abs(lhs - rhs));
        });
    }
    return worst;
}

FrameCompatibilityReport frame_compatibility_check(const MotionResult& motion)
{
    using Mat = std::array<double, 4>;  // row-major 2x2
    const auto mul = [](const Mat& p, const Mat& q) {
        return Mat{p[0] * q[0] + p[1] * q[2], p[0] * q[1] + p[1] * q[3], p[2] * q[0] + p[3] * q[2],
            p[2] * q[1] + p[3] * q[3]};
    };
    const auto rotation = [](double angle) {
        return Mat{std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle)};
    };
    const auto frame_velocity = [](double a, double w) {
        const double c = 2.0 * std::sin(w) / a;
        return Mat{0.0, c, -c, 0.0};
    };

    const SGrid& grid = motion.sheet.grid();
    const std::size_t count = grid.count();
    const std::size_t edges = motion.a.size();
    const double h = grid.step();
    FrameCompatibilityReport report;

    for (std::size_t n = 0; n + 1 < edges; ++n) {
        const auto& kappa = motion.kappa[n + 1];
        std::array<std::vector<double>, 4> entries;
        for (auto& e : entries) {
            e.resize(count);
        }
        for (std::size_t i = 0; i < count; ++i) {
            const Mat l = rotation(kappa[i]);
            for (std::size_t k = 0; k < 4; ++k) {
                entries[k][i] = l[k];
            }
        }
        for_interior_nodes(count, [&](std::size_t i) {
            const Mat l = rotation(kappa[i]);
            const Mat m_here = frame_velocity(motion.a[n][i], motion.w[n][i]);
            const Mat m_next = frame_velocity(motion.a[n + 1][i], motion.w[n + 1][i]);
            const Mat lm = mul(l, m_next);
            const Mat ml = mul(m_here, l);
            double sq = 0.0;
            for (std::size_t k = 0; k < 4; ++k) {
                const double dl = fd::derivative<double>(entries[k], h, i);
                const double d = dl - (lm[k] - ml[k]);
                sq += d * d;
            }
            report.compatibility = std::max(report.compatibility, std::sqrt(sq));
        });
    }

    for (std::size_t n = 0; n < edges; ++n) {
        const auto dpsi = derivative_series(motion.psi[n], h);
        for_interior_nodes(count, [&](std::size_t i) {
            const double d = dpsi[i] + 2.0 / motion.a[n][i] * std::sin(motion.w[n][i]);
            report.frenet = std::max(report.frenet, std::abs(d));
        });
    }
    return report;
}

double isoperimetric_defect(const MotionResult& motion)
{
    double worst = 0.0;
    for (const auto& row : motion.a) {
        for (double v : row) {
            worst = std::max(worst, std::abs(v - row.front()));
        }
    }
    return worst;
}

double theta_relation_defect(const MotionResult& motion)
{
    double worst = 0.0;
    for (std::size_t e = 0; e < motion.psi.size(); ++e) {
        for (std::size_t i = 0; i < motion.psi[e].size(); ++i) {
            const double sum = motion.theta[e + 1][i] + motion.theta[e][i];
            const double diff = motion.theta[e + 1][i] - motion.theta[e][i];
            worst = std::max(worst, std::abs(motion.psi[e][i] - 0.5 * sum));
            worst = std::max(worst, std::abs(motion.w[e][i] + 0.5 * diff));
        }
    }
    return worst;
}

double curvature_consistency_defect(const MotionResult& motion)
{
    const SGrid& grid = motion.sheet.grid();
    const std::size_t count = grid.count();
    if (count < fd::kSecondDerivativeMinNodes) {
        return 0.0;
    }
    const double h = grid.step();
    double worst = 0.0;
    for (std::size_t n = 0; n < motion.sheet.row_count(); ++n) {
        const auto row = motion.sheet.row(n);
        const auto dtheta = derivative_series(motion.theta[n], h);
        for_interior_nodes(count, [&](std::size_t i) {
            const PlanePoint d1 = fd::derivative<PlanePoint>(row, h, i);
            const PlanePoint d2 = fd::second_derivative<PlanePoint>(row, h, i);
            const double k = det(d1, d2) / std::pow(std::abs(d1), 3);
            worst = std::max(worst, std::abs(dtheta[i] - k));
        });
    }
    return worst;
}

} // namespace dflow
