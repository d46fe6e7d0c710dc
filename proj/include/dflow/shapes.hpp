#pragma once

#include <cstddef>
#include <numbers>
#include <vector>

#include "dflow/geometry.hpp"

namespace dflow {

/// Closed chain through the vertices of a regular N-gon: N + 1 points
/// R e^{i(2 pi n/N + phase)}, the last repeating the first.
inline std::vector<PlanePoint> regular_polygon(std::size_t sides, double radius, double phase = 0.0)
{
    std::vector<PlanePoint> v;
    v.reserve(sides + 1);
    for (std::size_t n = 0; n <= sides; ++n) {
        v.push_back(std::polar(radius, 2.0 * std::numbers::pi * static_cast<double>(n) / static_cast<double>(sides) + phase));
    }
    v.back() = v.front();
    return v;
}

/// Circle of radius R about center, parametrized by arc length.
inline PolarizedCurve arclength_circle(const SGrid& grid, double radius, PlanePoint center, Polarization m,
    double eps = kDefaultRegularity)
{
    using namespace std::complex_literals;
    return PolarizedCurve::analytic(
        grid, [=](double s) { return center + std::polar(radius, s / radius); },
        [=](double s) { return 1i * std::polar(1.0, s / radius); }, std::move(m), eps);
}

/// Straight line origin + s*direction.
inline PolarizedCurve straight_line(const SGrid& grid, PlanePoint origin, PlanePoint direction, Polarization m,
    double eps = kDefaultRegularity)
{
    return PolarizedCurve::analytic(
        grid, [=](double s) { return origin + s * direction; }, [=](double) { return direction; }, std::move(m), eps);
}

} // namespace dflow
