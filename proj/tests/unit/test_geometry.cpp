#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dflow/error.hpp"
#include "dflow/finite_difference.hpp"
#include "dflow/geometry.hpp"
#include "generators.hpp"

using namespace dflow;
using namespace std::complex_literals;

namespace {

constexpr double kPi = std::numbers::pi;

PolarizedCurve sampled_polynomial(const SGrid& grid, double (*f)(double))
{
    std::vector<PlanePoint> pts;
    for (std::size_t i = 0; i < grid.count(); ++i) {
        pts.emplace_back(f(grid.at(i)), 0.0);
    }
    return PolarizedCurve::sampled(grid, pts, Polarization::constant(1.0));
}

template <typename F>
ErrorKind kind_of(F&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an Error");
    return ErrorKind::InvalidArgument;
}

} // namespace

TEST_CASE("rotate examples")
{
    CHECK(std::abs(rotate(1.0, kPi / 2) - 1i) < 1e-15);
    CHECK(std::abs(rotate(1i, kPi / 2) - PlanePoint(-1.0)) < 1e-15);
    const PlanePoint p{0.3, -2.5};
    CHECK(rotate(p, 0.0) == p);
}

TEST_CASE("rotate preserves norm and inverts")
{
    testgen::Gen gen(11);
    for (int k = 0; k < 1000; ++k) {
        const PlanePoint p = gen.point(100.0);
        const double a = gen.uniform(-20.0, 20.0);
        const PlanePoint q = rotate(p, a);
        CHECK(std::abs(std::abs(q) - std::abs(p)) <= 1e-15 * std::abs(p));
        CHECK(std::abs(rotate(q, -a) - p) <= 1e-14 * std::max(1.0, std::abs(p)));
    }
}

TEST_CASE("SGrid")
{
    const SGrid g(0.5, 0.25, 5);
    CHECK(g.s1() == doctest::Approx(1.5));
    CHECK(g.at(2) == doctest::Approx(1.0));

    SUBCASE("covering spans the interval exactly")
    {
        const SGrid c = SGrid::covering(0.0, 2.0 * kPi, 1e-3);
        CHECK(c.step() <= 1e-3);
        CHECK(std::abs(c.s1() - 2.0 * kPi) <= 1e-12 * 2.0 * kPi);
        CHECK(std::abs(c.s1() - c.s0() - static_cast<double>(c.count() - 1) * c.step()) <= 1e-12);
    }
    SUBCASE("zero span gives one node")
    {
        CHECK(SGrid::covering(1.0, 1.0, 1e-3).count() == 1);
    }
    SUBCASE("refined halves the step")
    {
        const SGrid r = g.refined();
        CHECK(r.count() == 9);
        CHECK(r.step() == doctest::Approx(0.125));
        CHECK(r.s1() == doctest::Approx(g.s1()));
    }
    SUBCASE("invalid grids")
    {
        CHECK(kind_of([] { SGrid(0.0, 0.0, 3); }) == ErrorKind::InvalidArgument);
        CHECK(kind_of([] { SGrid(0.0, 0.1, 0); }) == ErrorKind::InvalidArgument);
    }
}

TEST_CASE("derivative examples")
{
    SUBCASE("analytic generator passes through")
    {
        const SGrid g(0.0, 0.1, 20);
        const auto c = PolarizedCurve::analytic(
            g, [](double s) { return std::polar(1.0, s); }, [](double s) { return 1i * std::polar(1.0, s); },
            Polarization::constant(1.0));
        for (std::size_t i = 0; i < g.count(); ++i) {
            CHECK(std::abs(derivative(c, i) - 1i * std::polar(1.0, g.at(i))) == 0.0);
        }
    }
    SUBCASE("x = s")
    {
        const auto c = sampled_polynomial(SGrid(0.0, 0.1, 11), [](double s) { return s; });
        for (std::size_t i = 0; i < 11; ++i) {
            CHECK(std::abs(derivative(c, i) - 1.0) < 1e-12);
        }
    }
    SUBCASE("x = s^2")
    {
        const SGrid g(0.5, 0.1, 11);
        const auto c = sampled_polynomial(g, [](double s) { return s * s; });
        for (std::size_t i = 0; i < 11; ++i) {
            CHECK(std::abs(derivative(c, i) - 2.0 * g.at(i)) < 1e-12);
        }
    }
    SUBCASE("fewer than five nodes")
    {
        std::vector<PlanePoint> pts{0.0, 0.1, 0.2, 0.3};
        const auto c = PolarizedCurve::sampled(SGrid(0.0, 0.1, 4), pts, Polarization::constant(1.0));
        CHECK(kind_of([&] { (void)derivative(c, 1); }) == ErrorKind::GridTooShort);
    }
}

TEST_CASE("finite differences are exact for quartics")
{
    testgen::Gen gen(5);
    for (int trial = 0; trial < 50; ++trial) {
        double c[5];
        for (double& ck : c) {
            ck = gen.uniform(-3.0, 3.0);
        }
        const double h = gen.uniform(0.01, 0.2);
        const SGrid g(gen.uniform(-1.0, 1.0), h, 12);
        std::vector<double> f;
        for (std::size_t i = 0; i < g.count(); ++i) {
            const double s = g.at(i);
            f.push_back(c[0] + s * (c[1] + s * (c[2] + s * (c[3] + s * c[4]))));
        }
        for (std::size_t i = 0; i < g.count(); ++i) {
            const double s = g.at(i);
            const double d1 = c[1] + s * (2 * c[2] + s * (3 * c[3] + s * 4 * c[4]));
            const double d2 = 2 * c[2] + s * (6 * c[3] + s * 12 * c[4]);
            const double scale = 1.0 + std::abs(d1) + std::abs(c[1]) + std::abs(c[2]) + std::abs(c[3]) + std::abs(c[4]);
            CHECK(std::abs(fd::derivative<double>(f, h, i) - d1) <= 1e-11 * scale / h);
            CHECK(std::abs(fd::second_derivative<double>(f, h, i) - d2) <= 1e-11 * scale / (h * h));
        }
    }
}

TEST_CASE("interpolation is exact at nodes")
{
    std::vector<double> f{1.0, 4.0, 9.0, 16.0, 25.0, 36.0, 49.0};
    for (std::size_t i = 0; i < f.size(); ++i) {
        CHECK(fd::interpolate<double>(f, static_cast<double>(i)) == f[i]);
    }
    CHECK(fd::interpolate<double>(f, 2.5) == doctest::Approx(3.5 * 3.5));
}

TEST_CASE("tangential cross ratio examples")
{
    CHECK(std::abs(tangential_cross_ratio(0.0, 1.0, 1i, 1.0) - PlanePoint(-1.0)) < 1e-15);
    CHECK(std::abs(tangential_cross_ratio(0.0, 1.0, 2.0, 1.0) - 0.25) < 1e-15);
    CHECK(std::abs(tangential_cross_ratio(1.0, 1i, -1.0, -1i) - 0.25) < 1e-15);
    CHECK(kind_of([] { (void)tangential_cross_ratio(1.0, 1.0, 1.0 + 1e-12, 1.0); }) == ErrorKind::CoincidentPoints);
}

TEST_CASE("antipodal circles are a Ribaucour pair")
{
    const SGrid g = SGrid::covering(0.0, 2.0 * kPi, 1e-2);
    for (std::size_t i = 0; i < g.count(); ++i) {
        const PlanePoint x = std::polar(1.0, g.at(i));
        const auto cr = tangential_cross_ratio(x, 1i * x, -x, -1i * x);
        CHECK(std::abs(cr.imag()) < 1e-10);
        CHECK(std::abs(cr - 0.25) < 1e-14);
    }
}

TEST_CASE("polarization")
{
    const SGrid g(0.0, 0.5, 5);
    CHECK(Polarization::constant(2.0).at(7.0) == 2.0);
    CHECK(Polarization::function([](double s) { return 1.0 + s; }).at(0.5) == 1.5);
    const auto sampled = Polarization::sampled(g, {1.0, 2.0, 3.0, 4.0, 5.0});
    CHECK(sampled.at(1.0) == 3.0);
    CHECK(sampled.at(1.25) == doctest::Approx(3.5));
    CHECK(kind_of([&] { Polarization::constant(0.0).validate_on(g); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([&] { Polarization::function([](double s) { return s - 1.0; }).validate_on(g); })
        == ErrorKind::InvalidArgument);
}

TEST_CASE("curve validation")
{
    const SGrid g(0.0, 0.1, 6);
    SUBCASE("non-finite sample")
    {
        std::vector<PlanePoint> pts(6, 0.0);
        for (std::size_t i = 0; i < 6; ++i) {
            pts[i] = static_cast<double>(i);
        }
        pts[3] = {NAN, 0.0};
        CHECK(kind_of([&] { (void)PolarizedCurve::sampled(g, pts, Polarization::constant(1.0)); })
            == ErrorKind::InvalidArgument);
    }
    SUBCASE("stationary point")
    {
        CHECK(kind_of([&] {
            (void)PolarizedCurve::analytic(
                g, [](double s) { return PlanePoint(s * s); }, [](double s) { return PlanePoint(2 * s); },
                Polarization::constant(1.0));
        }) == ErrorKind::SingularTangent);
    }
}

TEST_CASE("discrete curves")
{
    SUBCASE("regularity names the vertex")
    {
        const std::vector<PlanePoint> v{0.0, 1.0, 2.0};
        try {
            require_regular(v);
            FAIL("expected non-regular");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::NonRegular);
            CHECK(e.index() == 1u);
        }
        CHECK_NOTHROW(require_regular(std::vector<PlanePoint>{0.0, 1.0, 1.0 + 1i}));
    }
    SUBCASE("mu must keep one sign")
    {
        CHECK(kind_of([] { DiscretePolarizedCurve({0.0, 1.0, 2.0 + 1i}, {1.0, -1.0}); }) == ErrorKind::InvalidArgument);
        CHECK(kind_of([] { DiscretePolarizedCurve({0.0, 1.0}, {1.0, 1.0}); }) == ErrorKind::InvalidArgument);
        CHECK(kind_of([] { DiscretePolarizedCurve({0.0, 0.0}, {1.0}); }) == ErrorKind::NonRegular);
    }
    SUBCASE("arc-length weights")
    {
        const auto c = DiscretePolarizedCurve::with_arclength_polarization({0.0, 2.0, 2.0 + 1i});
        CHECK(c.mu()[0] == doctest::Approx(0.25));
        CHECK(c.mu()[1] == doctest::Approx(1.0));
    }
}

TEST_CASE("sheet access")
{
    const SGrid g(0.0, 0.1, 6);
    std::vector<std::vector<PlanePoint>> rows(2);
    for (std::size_t i = 0; i < 6; ++i) {
        rows[0].push_back(g.at(i));
        rows[1].push_back(g.at(i) + 2.0);
    }
    const Sheet sheet(g, rows);
    CHECK(sheet.row_count() == 2);
    const auto col = sheet.column(3);
    REQUIRE(col.size() == 2);
    CHECK(col[0] == rows[0][3]);
    CHECK(col[1] == rows[1][3]);
    for (PlanePoint d : sheet.row_derivative(1)) {
        CHECK(std::abs(d - 1.0) < 1e-12);
    }
    CHECK(sup_distance(sheet, sheet) == 0.0);
    CHECK_THROWS_AS(Sheet(g, {{0.0, 1.0}}), Error);
}
