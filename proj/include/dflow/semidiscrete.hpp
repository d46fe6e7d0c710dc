#pragma once

// Infinitesimal Darboux transformations of discrete polarized curves.
//
// A smooth motion x_n(s) of a discrete curve in which every edge (n, n+1)
// is a Darboux pair with parameter mu_(n,n+1) for the common polarization
// ds^2/m. Rows are generated edge by edge from one initial trajectory.

#include <cstddef>
#include <span>
#include <vector>

#include "dflow/geometry.hpp"

namespace dflow {

enum class EdgeDirection { Forward = +1, Backward = -1 };

struct FlowSpec {
    DiscretePolarizedCurve base;  ///< the discrete curve at s = s_start
    Polarization m;
    std::size_t initial_index;    ///< n0, the row given by initial_curve
    PolarizedCurve initial_curve; ///< x_{n0}(s), polarized by ds^2/m
    std::size_t start = 0;        ///< grid node of s_start
};

/// Neighbor trajectory across one edge: solves
/// x_nbr' = (mu_edge/m) (x_src - x_nbr)^2 / x_src' from initial_point.
/// The relation is symmetric in the pair, so `direction` is metadata only.
PolarizedCurve propagate_edge(const PolarizedCurve& source, double mu_edge, PlanePoint initial_point,
    EdgeDirection direction, std::size_t start = 0);

/// Fills the sheet outward from row n0. Errors are rethrown with the
/// offending edge index.
Sheet infinitesimal_darboux(const FlowSpec& spec);

/// max over edges of |1/mu - |x_n - x_{n+1}|^2|.
double is_discrete_arclength(const DiscretePolarizedCurve& curve);

/// Same measure for a bare vertex list and edge weights.
double discrete_arclength_deviation(std::span<const PlanePoint> vertices, std::span<const double> mu);

struct ArclengthFlowReport {
    double column_deviation = 0.0;  ///< max_i of the discrete arc-length deviation of column i
    double row_deviation = 0.0;     ///< max_{n,i} |1/m(s_i) - |x_n'(s_i)|^2|
    std::vector<double> column_deviation_by_node;
};

/// Both sides of the discrete/smooth arc-length equivalence on a sheet.
/// Row tangents are finite differences of the sheet samples.
ArclengthFlowReport arclength_flow_check(const Sheet& sheet, std::span<const double> mu, const Polarization& m);

/// max_i |m(s_i) cr_n(s_i) - mu_(n,n+1)| for each edge n, with tangents from
/// finite differences of the rows.
std::vector<double> edge_cross_ratio_defects(const Sheet& sheet, std::span<const double> mu, const Polarization& m);

} // namespace dflow
