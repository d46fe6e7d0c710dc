#pragma once

// Darboux transformations of polarized plane curves.
//
// Two curves x, xh polarized by ds^2/m form a Darboux pair with parameter mu
// when their tangential cross ratio equals mu/m. Given x, mu and a starting
// point, the partner xh solves the Riccati-type equation
//
//     xh' = (mu/m) (x - xh) (x')^{-1} (x - xh).
//
// The arc-length preserving case (constant distance 1/sqrt(mu) between the
// curves) is the bicycle correspondence.

#include <complex>
#include <optional>
#include <vector>

#include "dflow/geometry.hpp"

namespace dflow {

struct DarbouxParams {
    double mu;                 ///< constant spectral parameter, nonzero
    PlanePoint initial_point;  ///< xh at the start node
};

/// Per-node data of a Darboux pair.
struct PairSample {
    double s = 0.0;
    std::complex<double> cr;
    double r = 0.0;
    double r_hat = 0.0;
    /// Intersection of the two tangent lines; empty when the tangents are
    /// parallel (r == 0).
    std::optional<PlanePoint> y;
    double lambda = 0.0;  ///< |xh - x|^2
    bool degenerate = false;
    /// r_hat/r + (Lambda/|x'|^2)(mu/m), which vanishes on a Darboux pair;
    /// empty when degenerate.
    std::optional<double> ratio_residual;
};

/// (mu/m) (x - xh)^2 / x'.
PlanePoint riccati_rhs(PlanePoint x, PlanePoint xp, PlanePoint xh, double mu_over_m,
    double eps = kDefaultRegularity);

/// Integrates the Riccati equation from params.initial_point at node `start`.
/// The result shares the grid and polarization of `curve`; its tangents are
/// the right-hand side evaluated at the nodes.
PolarizedCurve darboux_transform(const PolarizedCurve& curve, const DarbouxParams& params, std::size_t start = 0);

/// r, r_hat, y, cr and Lambda of a pair at one node; mu_over_m only enters
/// the ratio residual.
PairSample pair_diagnostics(PlanePoint x, PlanePoint xp, PlanePoint xh, PlanePoint xhp, double mu_over_m,
    double eps = kDefaultRegularity);

/// pair_diagnostics at every node of two curves on the same grid.
std::vector<PairSample> diagnose_pair(const PolarizedCurve& x, const PolarizedCurve& xh, double mu);

/// Transform keeping the arc-length polarization: starts at distance
/// 1/sqrt(mu) from x(s_start) in direction offset_angle. Requires
/// 1/m = |x'|^2 at every node (within 1e-8).
PolarizedCurve arclength_darboux(const PolarizedCurve& curve, double mu, double offset_angle, std::size_t start = 0);

/// Max deviation of 1/m(s_i) from |x'(s_i)|^2 over the grid.
double smooth_arclength_deviation(const PolarizedCurve& curve);

/// max_i |m(s_i) cr(s_i) - mu| of a pair. Tangents of sampled curves are
/// re-derived by finite differences, so an integrated transform is not
/// checked against its own right-hand side.
double cross_ratio_defect(const PolarizedCurve& x, const PolarizedCurve& xh, double mu);

/// Residuals of the pair identities, maximised over the nodes (tangents as in
/// cross_ratio_defect).
struct PairIdentityReport {
    /// |r_hat + r (Lambda/|x'|^2)(mu/m)| relative to 2(|x'| + |xh'|)/sqrt(Lambda),
    /// the largest value |r| or |r_hat| can take. Checked at every node.
    double ratio_identity = 0.0;
    /// max | |x-y| - |xh-y| | / max(|x-y|, |xh-y|) over non-degenerate nodes.
    double equidistance = 0.0;
    /// x + x'/r = xh + xh'/r_hat in the form r r_hat (x - xh) + r_hat x' - r xh' = 0,
    /// relative to the same scale squared times |x'| + |xh'|. Checked at every node.
    double center_agreement = 0.0;
    /// Lambda' by finite differences against (-r_hat - r) Lambda.
    double lambda_rate_sum = 0.0;
    /// Lambda' by finite differences against r (mu Lambda/(m|x'|^2) - 1) Lambda.
    double lambda_rate_logistic = 0.0;
    std::size_t degenerate_nodes = 0;
};

PairIdentityReport check_pair_identities(const PolarizedCurve& x, const PolarizedCurve& xh, double mu);

} // namespace dflow
