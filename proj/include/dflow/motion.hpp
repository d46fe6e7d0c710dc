#pragma once

// Isoperimetric motions of discrete plane curves.
//
// Every vertex moves with unit speed in the direction making angle w_n with
// the outgoing edge T_n. The motion keeps all edge lengths fixed exactly
// when w_{n+1} + kappa_{n+1} = -w_n, and the tangential angles theta_n of
// the vertex trajectories then satisfy the semi-discrete potential mKdV
// equation
//
//     ((theta_{n+1} + theta_n)/2)' = (2/a_n) sin((theta_{n+1} - theta_n)/2).

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "dflow/geometry.hpp"

namespace dflow {

/// Frame of a discrete curve with N vertices and E = N-1 edges. Edge-indexed
/// arrays have E entries; entry n belongs to vertex n and its outgoing edge.
struct DiscreteFrameData {
    std::vector<double> a;            ///< |x_{n+1} - x_n|
    std::vector<PlanePoint> tangent;  ///< T_n
    std::vector<PlanePoint> normal;   ///< N_n = R(pi/2) T_n
    std::vector<double> psi;          ///< arg T_n, unwrapped so |psi_{n+1} - psi_n| < pi
    /// Turning angle at interior vertex n (1 <= n < E): psi_n = psi_{n-1} + kappa_n.
    /// kappa[0] is unused and set to zero.
    std::vector<double> kappa;

    std::size_t edge_count() const noexcept { return a.size(); }
};

/// Throws NonRegular naming the first bad vertex.
DiscreteFrameData discrete_frame(std::span<const PlanePoint> vertices, double eps = kDefaultRegularity);

/// Solves the isoperimetric recursion from w_{n0} = w0 in both directions.
std::vector<double> seed_w(const DiscreteFrameData& frame, double w0, std::size_t n0);

struct MotionState {
    std::vector<PlanePoint> vertices;
    DiscreteFrameData frame;
    std::vector<double> w;      ///< per edge
    std::vector<double> theta;  ///< per vertex; theta_n = psi_n + w_n, last one psi_{E-1} - w_{E-1}
};

MotionState make_motion_state(std::vector<PlanePoint> vertices, double w0, std::size_t n0,
    double eps = kDefaultRegularity);

/// Vertex velocities e^{i theta_n}.
std::vector<PlanePoint> motion_rhs(const MotionState& state);

/// Seed angle as a function of s; constant by default.
using SeedFunction = std::function<double(double)>;

/// Sheet of an integrated motion plus the per-node frame data recorded along
/// it. Vertex-indexed arrays are [n][i]; edge-indexed arrays are [e][i].
/// Angles are continuous in s.
struct MotionResult {
    Sheet sheet;
    std::vector<std::vector<double>> theta;
    std::vector<std::vector<double>> psi;
    std::vector<std::vector<double>> w;
    std::vector<std::vector<double>> kappa;
    std::vector<std::vector<double>> a;

    /// a_n(s_0).
    std::vector<double> initial_edge_lengths() const;
};

/// RK4 in s of all vertices at once, with w re-derived from the seed and the
/// current curvature at every stage. curve0 must be regular; later columns
/// may pass through straight vertices but must not fold back.
MotionResult integrate_motion(std::span<const PlanePoint> curve0, const SeedFunction& w0, std::size_t n0,
    const SGrid& grid, double eps = kDefaultRegularity);

MotionResult integrate_motion(std::span<const PlanePoint> curve0, double w0, std::size_t n0, const SGrid& grid,
    double eps = kDefaultRegularity);

/// max over edges and interior nodes of
/// |d/ds (theta_{n+1}+theta_n)/2 - (2/a_n) sin((theta_{n+1}-theta_n)/2)|.
double mkdv_residual(const std::vector<std::vector<double>>& theta, std::span<const double> a, const SGrid& grid);

struct FrameCompatibilityReport {
    /// max |L_n' - (L_n M_{n+1} - M_n L_n)| (Frobenius), L_n = R(kappa_{n+1}).
    double compatibility = 0.0;
    /// max |psi_n' + (2/a_n) sin w_n|.
    double frenet = 0.0;
};

FrameCompatibilityReport frame_compatibility_check(const MotionResult& motion);

/// max_{n,i} |a_n(s_i) - a_n(s_0)|.
double isoperimetric_defect(const MotionResult& motion);

/// max of |psi_n - (theta_{n+1}+theta_n)/2| and |w_n + (theta_{n+1}-theta_n)/2|.
double theta_relation_defect(const MotionResult& motion);

/// max over interior nodes of |theta_n' - k_n|, where k_n = det(x', x'')/|x'|^3
/// is the curvature of row n computed from the sheet samples alone.
double curvature_consistency_defect(const MotionResult& motion);

} // namespace dflow
