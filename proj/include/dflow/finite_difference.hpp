#pragma once

// Fourth-order finite differences and local Lagrange interpolation on a
// uniform grid. Templated over the sample type so the same stencils serve
// real-valued angles and complex-valued positions.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>

#include "dflow/error.hpp"

namespace dflow::fd {

inline constexpr std::size_t kFirstDerivativeMinNodes = 5;
inline constexpr std::size_t kSecondDerivativeMinNodes = 6;

/// First derivative at node i; central stencil on the interior,
/// one-sided fourth-order stencils in the two boundary bands.
template <typename T>
T derivative(std::span<const T> f, double h, std::size_t i)
{
    const std::size_t n = f.size();
    if (n < kFirstDerivativeMinNodes) {
        throw Error(ErrorKind::GridTooShort, "first derivative needs at least 5 nodes");
    }
    const double inv = 1.0 / (12.0 * h);
    if (i >= 2 && i + 2 < n) {
        return (8.0 * (f[i + 1] - f[i - 1]) - (f[i + 2] - f[i - 2])) * inv;
    }
    if (i == 0) {
        return (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) * inv;
    }
    if (i == 1) {
        return (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) * inv;
    }
    const std::size_t l = n - 1;
    if (i == l) {
        return (25.0 * f[l] - 48.0 * f[l - 1] + 36.0 * f[l - 2] - 16.0 * f[l - 3] + 3.0 * f[l - 4]) * inv;
    }
    return (3.0 * f[l] + 10.0 * f[l - 1] - 18.0 * f[l - 2] + 6.0 * f[l - 3] - f[l - 4]) * inv;
}

/// Second derivative at node i, fourth order everywhere.
template <typename T>
T second_derivative(std::span<const T> f, double h, std::size_t i)
{
    const std::size_t n = f.size();
    if (n < kSecondDerivativeMinNodes) {
        throw Error(ErrorKind::GridTooShort, "second derivative needs at least 6 nodes");
    }
    const double inv = 1.0 / (12.0 * h * h);
    if (i >= 2 && i + 2 < n) {
        return (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) * inv;
    }
    if (i == 0) {
        return (45.0 * f[0] - 154.0 * f[1] + 214.0 * f[2] - 156.0 * f[3] + 61.0 * f[4] - 10.0 * f[5]) * inv;
    }
    if (i == 1) {
        return (10.0 * f[0] - 15.0 * f[1] - 4.0 * f[2] + 14.0 * f[3] - 6.0 * f[4] + f[5]) * inv;
    }
    const std::size_t l = n - 1;
    if (i == l) {
        return (45.0 * f[l] - 154.0 * f[l - 1] + 214.0 * f[l - 2] - 156.0 * f[l - 3] + 61.0 * f[l - 4]
                   - 10.0 * f[l - 5])
            * inv;
    }
    return (10.0 * f[l] - 15.0 * f[l - 1] - 4.0 * f[l - 2] + 14.0 * f[l - 3] - 6.0 * f[l - 4] + f[l - 5]) * inv;
}

/// Evaluates the interpolating polynomial through (up to) six nodes
/// surrounding the fractional index t. Exact at nodes; sixth order between.
template <typename T>
T interpolate(std::span<const T> f, double t)
{
    const std::size_t n = f.size();
    if (n == 0) {
        throw Error(ErrorKind::GridTooShort, "cannot interpolate an empty sample set");
    }
    const double nearest = std::round(t);
    if (std::abs(t - nearest) < 1e-12 && nearest >= 0.0 && nearest <= static_cast<double>(n - 1)) {
        return f[static_cast<std::size_t>(nearest)];
    }
    const std::size_t width = std::min<std::size_t>(6, n);
    const auto base = static_cast<std::ptrdiff_t>(std::floor(t)) - static_cast<std::ptrdiff_t>(width / 2 - 1);
    const std::size_t first = static_cast<std::size_t>(
        std::clamp<std::ptrdiff_t>(base, 0, static_cast<std::ptrdiff_t>(n - width)));

    T result{};
    for (std::size_t j = 0; j < width; ++j) {
        const double xj = static_cast<double>(first + j);
        double weight = 1.0;
        for (std::size_t k = 0; k < width; ++k) {
            if (k != j) {
                const double xk = static_cast<double>(first + k);
                weight *= (t - xk) / (xj - xk);
            }
        }
        result += weight * f[first + j];
    }
    return result;
}

} // namespace dflow::fd
