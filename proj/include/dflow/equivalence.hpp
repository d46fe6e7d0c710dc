#pragma once

// Numerical comparison of the two constructions of the same semi-discrete
// system: the isoperimetric frame motion and the arc-length preserving
// infinitesimal Darboux transformation.

#include <cstddef>
#include <span>
#include <vector>

#include "dflow/geometry.hpp"
#include "dflow/motion.hpp"

namespace dflow {

struct EquivalenceReport {
    double sup_distance = 0.0;        ///< max |sheetA - sheetB|
    double cross_ratio_defect = 0.0;  ///< max |m cr - mu| over the edges of both sheets
    double arclength_defect = 0.0;    ///< max discrete and smooth arc-length deviation of both sheets
    double mkdv_residual = 0.0;       ///< of both sheets' tangential angles
    double identity_defect = 0.0;     ///< frameless identity on both sheets
};

struct IsoDarbouxReport {
    double defect = 0.0;     ///< max |cr - 1/a_n^2|
    double max_imag = 0.0;   ///< max |Im cr|
};

/// Edge cross ratios of a sheet (m == 1) against 1/a_n^2, with row tangents
/// from finite differences of the samples.
IsoDarbouxReport iso_darboux_check(const Sheet& sheet, std::span<const double> edge_lengths);

/// Tangential angle of every row, arg x_n', continuous in s. Branches across
/// n are fixed at the first node so that (theta_n + theta_{n+1})/2 is the
/// direction of x_{n+1} - x_n.
std::vector<std::vector<double>> tangential_angles(const Sheet& sheet);

/// mKdV residual of a sheet read from its samples alone: theta from
/// tangential_angles and theta' = det(x', x'')/|x'|^2, both by
/// finite differences of the rows, at every node.
double sheet_mkdv_residual(const Sheet& sheet, std::span<const double> edge_lengths);

/// Evaluates, per edge and interior node, (x_n' x_{n+1}')' three ways:
/// directly from theta, as 2 sqrt(mu)(e^{i theta_{n+1}} - e^{i theta_n})
/// e^{i theta_n/2} e^{i theta_{n+1}/2}, and as i(theta_{n+1}' + theta_n')
/// e^{i theta_n} e^{i theta_{n+1}}; plus the scalar mKdV form with the edge
/// lengths read off the sheet. Returns the largest discrepancy. The
/// square-root branch is matched up to sign.
double frameless_identity_check(const Sheet& sheet, const std::vector<std::vector<double>>& theta,
    std::span<const double> mu);

/// Runs the frame motion (A) and the infinitesimal Darboux flow seeded with
/// row n0 of A (B) on the same grid, and compares them.
EquivalenceReport pipelines_agree(std::span<const PlanePoint> curve0, double w0, std::size_t n0, const SGrid& grid);

/// pipelines_agree, also returning both sheets.
struct PipelineRun {
    MotionResult motion;
    Sheet flow;
    EquivalenceReport report;
};
PipelineRun run_pipelines(std::span<const PlanePoint> curve0, double w0, std::size_t n0, const SGrid& grid);

} // namespace dflow
