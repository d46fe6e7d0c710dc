#include "dflow/ode.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "dflow/error.hpp"

namespace dflow {

namespace {

void require_finite(std::span<const PlanePoint> v, std::size_t node)
{
    for (const auto& z : v) {
        if (!is_finite(z)) {
            throw Error(ErrorKind::Blowup, "right-hand side is not finite", node);
        }
    }
}

// One RK4 step of signed size h from s; `node` is the grid index of s and is
// only used for error reporting. The increment is added with compensated
// (Kahan) summation, carry holding the low-order bits lost so far.
void rk4_step(const SystemRhs& rhs, double s, double h, std::vector<PlanePoint>& y, std::vector<PlanePoint>& carry,
    std::size_t node)
{
    const std::size_t n = y.size();
    std::vector<PlanePoint> k1(n), k2(n), k3(n), k4(n), tmp(n);

    rhs(s, y, k1);
    require_finite(k1, node);
    for (std::size_t j = 0; j < n; ++j) {
        tmp[j] = y[j] + 0.5 * h * k1[j];
    }
    rhs(s + 0.5 * h, tmp, k2);
    require_finite(k2, node);
    for (std::size_t j = 0; j < n; ++j) {
        tmp[j] = y[j] + 0.5 * h * k2[j];
    }
    rhs(s + 0.5 * h, tmp, k3);
    require_finite(k3, node);
    for (std::size_t j = 0; j < n; ++j) {
        tmp[j] = y[j] + h * k3[j];
    }
    rhs(s + h, tmp, k4);
    require_finite(k4, node);
    for (std::size_t j = 0; j < n; ++j) {
        const PlanePoint increment = h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]) - carry[j];
        const PlanePoint sum = y[j] + increment;
        carry[j] = (sum - y[j]) - increment;
        y[j] = sum;
    }
    require_finite(y, node);
}

} // namespace

std::vector<std::vector<PlanePoint>> integrate_rk4_system(const SGrid& grid, const SystemRhs& rhs,
    std::vector<PlanePoint> y0, std::size_t start)
{
    if (!rhs) {
        throw Error(ErrorKind::InvalidArgument, "missing right-hand side");
    }
    if (start >= grid.count()) {
        throw Error(ErrorKind::InvalidArgument, "start node outside the grid", start);
    }
    require_finite(y0, start);

    std::vector<std::vector<PlanePoint>> out(grid.count());
    out[start] = y0;

    std::vector<PlanePoint> y = y0;
    std::vector<PlanePoint> carry(y.size());
    for (std::size_t i = start; i + 1 < grid.count(); ++i) {
        // Node times are recomputed from the grid to avoid accumulating s.
        rk4_step(rhs, grid.at(i), grid.at(i + 1) - grid.at(i), y, carry, i + 1);
        out[i + 1] = y;
    }
    y = std::move(y0);
    std::fill(carry.begin(), carry.end(), PlanePoint{});
    for (std::size_t i = start; i > 0; --i) {
        rk4_step(rhs, grid.at(i), grid.at(i - 1) - grid.at(i), y, carry, i - 1);
        out[i - 1] = y;
    }
    return out;
}

std::vector<PlanePoint> integrate_rk4(const OdeProblem& problem, std::size_t start)
{
    if (!problem.rhs) {
        throw Error(ErrorKind::InvalidArgument, "missing right-hand side");
    }
    const auto& f = problem.rhs;
    const SystemRhs system = [&f](double s, std::span<const PlanePoint> y, std::span<PlanePoint> dy) {
        dy[0] = f(s, y[0]);
    };
    const auto states = integrate_rk4_system(problem.grid, system, {problem.y0}, start);
    std::vector<PlanePoint> out;
    out.reserve(states.size());
    for (const auto& st : states) {
        out.push_back(st[0]);
    }
    return out;
}

} // namespace dflow
