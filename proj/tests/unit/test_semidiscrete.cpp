#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dflow/error.hpp"
#include "dflow/motion.hpp"
#include "dflow/semidiscrete.hpp"
#include "dflow/shapes.hpp"

using namespace dflow;
using namespace std::complex_literals;

namespace {

constexpr double kPi = std::numbers::pi;

const Polarization kUnit = Polarization::constant(1.0);

Sheet shifted_lines(const SGrid& grid, double speed = 1.0, std::size_t start = 0)
{
    const auto seed = PolarizedCurve::analytic(
        grid, [=](double s) { return PlanePoint(speed * (s - grid.at(start))); },
        [=](double) { return PlanePoint(speed); }, kUnit);
    const DiscretePolarizedCurve base({0.0, 2.0, 4.0, 6.0}, {0.25, 0.25, 0.25});
    return infinitesimal_darboux({base, kUnit, 0, seed, start});
}

} // namespace

TEST_CASE("propagate_edge examples")
{
    SUBCASE("line")
    {
        const auto src = straight_line(SGrid::covering(0.0, 4.0, 1e-3), 0.0, 1.0, kUnit);
        const auto nbr = propagate_edge(src, 0.25, 2.0, EdgeDirection::Forward);
        for (std::size_t i = 0; i < nbr.grid().count(); ++i) {
            CHECK(std::abs(nbr.point(i) - (nbr.grid().at(i) + 2.0)) < 1e-10);
        }
    }
    SUBCASE("circle")
    {
        const auto src = arclength_circle(SGrid::covering(0.0, 2.0 * kPi, 1e-3), 1.0, 0.0, kUnit);
        const auto nbr = propagate_edge(src, 0.25, -1.0, EdgeDirection::Backward);
        double err = 0.0;
        for (std::size_t i = 0; i < nbr.grid().count(); ++i) {
            err = std::max(err, std::abs(nbr.point(i) + std::polar(1.0, nbr.grid().at(i))));
        }
        CHECK(err < 1e-6);
    }
    SUBCASE("one node")
    {
        const auto src = straight_line(SGrid(0.0, 1.0, 1), 0.0, 1.0, kUnit);
        const auto nbr = propagate_edge(src, 0.25, 3.0i, EdgeDirection::Forward);
        REQUIRE(nbr.grid().count() == 1);
        CHECK(nbr.point(0) == 3.0i);
    }
}

TEST_CASE("infinitesimal_darboux on shifted lines")
{
    const Sheet sheet = shifted_lines(SGrid::covering(0.0, 2.0, 1e-3));
    REQUIRE(sheet.row_count() == 4);
    for (std::size_t n = 0; n < 4; ++n) {
        for (std::size_t i = 0; i < sheet.grid().count(); ++i) {
            CHECK(std::abs(sheet.at(n, i) - (sheet.grid().at(i) + 2.0 * static_cast<double>(n))) < 1e-10);
        }
    }
}

TEST_CASE("flow seeded in the middle of the curve")
{
    const SGrid g = SGrid::covering(0.0, 1.0, 1e-3);
    const auto seed = PolarizedCurve::analytic(
        g, [](double s) { return PlanePoint(s + 4.0); }, [](double) { return PlanePoint(1.0); }, kUnit);
    const DiscretePolarizedCurve base({0.0, 2.0, 4.0, 6.0}, {0.25, 0.25, 0.25});
    const Sheet sheet = infinitesimal_darboux({base, kUnit, 2, seed, 0});
    for (std::size_t n = 0; n < 4; ++n) {
        CHECK(std::abs(sheet.at(n, g.count() - 1) - (1.0 + 2.0 * static_cast<double>(n))) < 1e-10);
    }
}

TEST_CASE("single vertex")
{
    const SGrid g(0.0, 0.1, 11);
    const auto seed = arclength_circle(g, 1.0, 0.0, kUnit);
    const Sheet sheet = infinitesimal_darboux({DiscretePolarizedCurve({1.0}, {}), kUnit, 0, seed, 0});
    REQUIRE(sheet.row_count() == 1);
    for (std::size_t i = 0; i < g.count(); ++i) {
        CHECK(sheet.at(0, i) == seed.point(i));
    }
}

TEST_CASE("hexagon flow reproduces the rigid rotation")
{
    const SGrid g = SGrid::covering(0.0, 1.0, 1e-3);
    const auto hexagon = regular_polygon(6, 1.0);
    const MotionResult motion = integrate_motion(hexagon, -kPi / 6.0, 0, g);
    const auto seed = arclength_circle(g, 1.0, 0.0, kUnit);
    const auto base = DiscretePolarizedCurve::with_arclength_polarization(hexagon);
    const Sheet flow = infinitesimal_darboux({base, kUnit, 0, seed, 0});
    CHECK(sup_distance(flow, motion.sheet) < 1e-5);
    for (std::size_t n = 0; n < flow.row_count(); ++n) {
        const PlanePoint end = std::polar(1.0, 2.0 * kPi * static_cast<double>(n % 6) / 6.0 + 1.0);
        CHECK(std::abs(flow.at(n, g.count() - 1) - end) < 1e-8);
    }
}

TEST_CASE("invalid flow specs")
{
    const SGrid g(0.0, 0.1, 11);
    const auto seed = straight_line(g, 0.0, 1.0, kUnit);
    const DiscretePolarizedCurve base({0.0, 2.0}, {0.25});
    CHECK_THROWS_AS(infinitesimal_darboux({base, kUnit, 2, seed, 0}), Error);
    CHECK_THROWS_AS(infinitesimal_darboux({base, kUnit, 1, seed, 0}), Error);
    CHECK_THROWS_AS(infinitesimal_darboux({base, Polarization::constant(2.0), 0, seed, 0}), Error);
}

TEST_CASE("is_discrete_arclength examples")
{
    CHECK(is_discrete_arclength(DiscretePolarizedCurve({0.0, 1.0, 1.0 + 1i}, {1.0, 1.0})) == 0.0);
    CHECK(is_discrete_arclength(DiscretePolarizedCurve({0.0, 2.0}, {0.25})) == 0.0);
    CHECK(is_discrete_arclength(DiscretePolarizedCurve({0.0, 1.0}, {0.5})) == doctest::Approx(1.0));
}

TEST_CASE("arclength_flow_check examples")
{
    const std::vector<double> mu(3, 0.25);
    SUBCASE("shifted lines")
    {
        const auto rep = arclength_flow_check(shifted_lines(SGrid::covering(0.0, 2.0, 1e-3)), mu, kUnit);
        CHECK(rep.column_deviation < 1e-9);
        CHECK(rep.row_deviation < 1e-9);
    }
    SUBCASE("rotating hexagon")
    {
        const MotionResult motion = integrate_motion(regular_polygon(6, 1.0), -kPi / 6.0, 0,
            SGrid::covering(0.0, 1.0, 1e-3));
        const std::vector<double> hex_mu(6, 1.0);
        const auto rep = arclength_flow_check(motion.sheet, hex_mu, kUnit);
        CHECK(rep.column_deviation < 1e-8);
        CHECK(rep.row_deviation < 1e-8);
    }
    SUBCASE("double speed seed")
    {
        const Sheet sheet = shifted_lines(SGrid::covering(0.0, 0.5, 1e-3), 2.0);
        const auto rep = arclength_flow_check(sheet, mu, kUnit);
        for (std::size_t i = 0; i < sheet.grid().count(); ++i) {
            CHECK(std::abs(std::norm(sheet.row_derivative(0)[i]) - 1.0 - 3.0) < 1e-9);
        }
        CHECK(rep.column_deviation_by_node.front() < 1e-9);
        CHECK(rep.column_deviation_by_node.back() > 1e-3);
    }
}

TEST_CASE("edge direction is metadata only")
{
    const SGrid g = SGrid::covering(0.0, 2.0, 1e-3);
    const auto src = arclength_circle(g, 1.0, 0.0, kUnit);
    const auto fwd = propagate_edge(src, 0.5, 0.4 + 0.9i, EdgeDirection::Forward);
    const auto bwd = propagate_edge(src, 0.5, 0.4 + 0.9i, EdgeDirection::Backward);
    double diff = 0.0;
    for (std::size_t i = 0; i < g.count(); ++i) {
        diff = std::max(diff, std::abs(fwd.point(i) - bwd.point(i)));
    }
    CHECK(diff < 1e-6);
}

TEST_CASE("edge cross ratios of a flow")
{
    const SGrid g = SGrid::covering(0.0, 1.0, 1e-3);
    const Polarization m = Polarization::function([](double s) { return 1.0 + 0.3 * std::cos(s); });
    const auto seed = arclength_circle(g, 1.0, 0.0, m);
    const DiscretePolarizedCurve base({1.0, 2.5 + 0.5i, 3.0 + 2.0i}, {0.3, 0.2});
    const Sheet sheet = infinitesimal_darboux({base, m, 0, seed, 0});
    for (double d : edge_cross_ratio_defects(sheet, base.mu(), m)) {
        CHECK(d < 1e-6);
    }
}
