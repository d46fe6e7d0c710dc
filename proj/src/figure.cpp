#include "dflow/figure.hpp"

#include <algorithm>
#include <numbers>
#include <vector>

#include "dflow/darboux.hpp"
#include "dflow/io.hpp"

namespace dflow {

Figure1 make_figure1(const Figure1Params& params)
{
    using namespace std::complex_literals;
    const SGrid grid = SGrid::covering(0.0, 2.0 * std::numbers::pi, params.h);
    auto x = [](double s) { return std::polar(1.0, s); };
    auto dx = [](double s) { return 1i * std::polar(1.0, s); };

    PolarizedCurve circle1 = PolarizedCurve::analytic(grid, x, dx, Polarization::function(params.m1));
    PolarizedCurve circle2 = PolarizedCurve::analytic(grid, x, dx, Polarization::function(params.m2));
    const DarbouxParams darboux{params.mu, params.initial_point};

    Figure1 fig{circle1, darboux_transform(circle1, darboux), darboux_transform(circle2, darboux)};
    fig.first_defect = cross_ratio_defect(circle1, fig.first, params.mu);
    fig.second_defect = cross_ratio_defect(circle2, fig.second, params.mu);
    for (std::size_t i = 0; i < grid.count(); ++i) {
        fig.mutual_distance = std::max(fig.mutual_distance, std::abs(fig.first.point(i) - fig.second.point(i)));
    }
    return fig;
}

std::string render_figure1(const Figure1& figure)
{
    auto points = [](const PolarizedCurve& c) { return std::vector<PlanePoint>(c.points().begin(), c.points().end()); };
    const std::vector<std::vector<PlanePoint>> curves{points(figure.first), points(figure.second), points(figure.base)};
    const PlanePoint marker = figure.first.point(0);
    return render_svg(curves, std::span<const PlanePoint>(&marker, 1));
}

} // namespace dflow
