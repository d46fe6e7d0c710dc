#pragma once

// Two Darboux transforms of the unit circle with the same spectral parameter
// and initial point but different polarizations.

#include <cmath>
#include <functional>
#include <string>

#include "dflow/geometry.hpp"

namespace dflow {

struct Figure1Params {
    double mu = 0.25;
    PlanePoint initial_point{0.3, 0.0};
    std::function<double(double)> m1 = [](double) { return 1.0; };
    std::function<double(double)> m2 = [](double s) { return 1.0 + 0.5 * std::sin(s); };
    double h = 1e-3;
};

struct Figure1 {
    PolarizedCurve base;
    PolarizedCurve first;   ///< polarized by m1
    PolarizedCurve second;  ///< polarized by m2
    double first_defect = 0.0;   ///< max |m1 cr - mu|
    double second_defect = 0.0;  ///< max |m2 cr - mu|
    double mutual_distance = 0.0; ///< max_s |first - second|
};

Figure1 make_figure1(const Figure1Params& params = {});

/// first in red, second in blue, the circle in black, and the initial point.
std::string render_figure1(const Figure1& figure);

} // namespace dflow
