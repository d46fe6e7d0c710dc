#pragma once

// Fixed-step classic Runge-Kutta integration along an SGrid.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "dflow/geometry.hpp"

namespace dflow {

/// y' = rhs(s, y), y(s_start) = y0 for a single complex unknown.
struct OdeProblem {
    SGrid grid;
    std::function<PlanePoint(double, PlanePoint)> rhs;
    PlanePoint y0;
};

/// rhs(s, y, dy) writes dy = f(s, y) for a vector of complex unknowns.
using SystemRhs = std::function<void(double, std::span<const PlanePoint>, std::span<PlanePoint>)>;

/// Integrates with step h from the node `start` (where y = y0) forward to the
/// end of the grid and backward to its beginning. Returns y at every node.
/// Throws Blowup, carrying the node reached, when rhs turns non-finite.
std::vector<PlanePoint> integrate_rk4(const OdeProblem& problem, std::size_t start = 0);

/// Vector version; result[i] is the state at node i.
std::vector<std::vector<PlanePoint>> integrate_rk4_system(const SGrid& grid, const SystemRhs& rhs,
    std::vector<PlanePoint> y0, std::size_t start = 0);

} // namespace dflow
