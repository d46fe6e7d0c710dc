#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dflow/error.hpp"
#include "dflow/ode.hpp"

using namespace dflow;
using namespace std::complex_literals;

namespace {

constexpr double kPi = std::numbers::pi;

double rotation_error(double h)
{
    const OdeProblem p{SGrid::covering(0.0, 2.0 * kPi, h), [](double, PlanePoint y) { return 1i * y; }, 1.0};
    const auto y = integrate_rk4(p);
    double err = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        err = std::max(err, std::abs(y[i] - std::polar(1.0, p.grid.at(i))));
    }
    return err;
}

} // namespace

TEST_CASE("y' = iy returns to 1 after a full turn")
{
    const OdeProblem p{SGrid::covering(0.0, 2.0 * kPi, 1e-3), [](double, PlanePoint y) { return 1i * y; }, 1.0};
    const auto y = integrate_rk4(p);
    CHECK(y.size() == p.grid.count());
    CHECK(std::abs(y.back() - 1.0) < 1e-10);
}

TEST_CASE("constant right-hand side is integrated exactly")
{
    const OdeProblem p{SGrid(0.0, 0.25, 9), [](double, PlanePoint) { return PlanePoint(3.0, 4.0); }, 0.0};
    const auto y = integrate_rk4(p);
    for (std::size_t i = 0; i < y.size(); ++i) {
        CHECK(std::abs(y[i] - PlanePoint(3.0, 4.0) * p.grid.at(i)) < 1e-15);
    }
}

TEST_CASE("y' = y^2 from 1 reaches 2 at s = 1/2")
{
    const OdeProblem p{SGrid::covering(0.0, 0.5, 1e-3), [](double, PlanePoint y) { return y * y; }, 1.0};
    CHECK(std::abs(integrate_rk4(p).back() - 2.0) < 1e-9);
}

TEST_CASE("fourth-order convergence")
{
    const double ratio = rotation_error(0.1) / rotation_error(0.05);
    CHECK(ratio >= 14.0);
    CHECK(ratio <= 18.0);
}

TEST_CASE("starting in the middle integrates both ways")
{
    const SGrid g(-1.0, 0.01, 201);
    const OdeProblem p{g, [](double s, PlanePoint) { return PlanePoint(3.0 * s * s); }, 0.0};
    const auto y = integrate_rk4(p, 100);
    CHECK(y[100] == PlanePoint(0.0));
    for (std::size_t i = 0; i < g.count(); ++i) {
        const double s = g.at(i);
        CHECK(std::abs(y[i] - s * s * s) < 1e-13);
    }
}

TEST_CASE("integration is reversible")
{
    const SGrid g(0.0, 1e-2, 301);
    const auto rhs = [](double s, PlanePoint y) { return 1i * y + 0.3 * std::sin(s); };
    const auto forward = integrate_rk4({g, rhs, PlanePoint(0.5, -0.2)});
    const auto backward = integrate_rk4({g, rhs, forward.back()}, g.count() - 1);
    CHECK(std::abs(backward.front() - PlanePoint(0.5, -0.2)) < 1e-10);
}

TEST_CASE("system version matches the scalar one")
{
    const SGrid g(0.0, 0.05, 41);
    const auto scalar = integrate_rk4({g, [](double, PlanePoint y) { return 1i * y; }, 1.0});
    const auto system = integrate_rk4_system(
        g,
        [](double, std::span<const PlanePoint> y, std::span<PlanePoint> dy) {
            dy[0] = 1i * y[0];
            dy[1] = -y[1];
        },
        {1.0, 2.0});
    for (std::size_t i = 0; i < g.count(); ++i) {
        CHECK(system[i][0] == scalar[i]);
        CHECK(std::abs(system[i][1] - 2.0 * std::exp(-g.at(i))) < 1e-7);
    }
}

TEST_CASE("one-node grid returns the initial value")
{
    const auto y = integrate_rk4({SGrid(0.0, 1.0, 1), [](double, PlanePoint y) { return y; }, 2.0i});
    REQUIRE(y.size() == 1);
    CHECK(y[0] == 2.0i);
}

TEST_CASE("blowup reports the node")
{
    const SGrid g(0.0, 0.01, 201);
    try {
        (void)integrate_rk4({g, [](double, PlanePoint y) { return y * y * y * y; }, 1.0});
        FAIL("expected blowup");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Blowup);
        REQUIRE(e.index().has_value());
        CHECK(*e.index() > 0u);
        CHECK(*e.index() < g.count());
    }
}

TEST_CASE("start outside the grid")
{
    CHECK_THROWS_AS(integrate_rk4({SGrid(0.0, 0.1, 3), [](double, PlanePoint y) { return y; }, 1.0}, 3), Error);
}
