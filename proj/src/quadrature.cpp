#include "cpgas/quadrature.hpp"

#include <limits>

namespace cpgas {

DerivativeEstimate central_difference(const std::function<double(double)>& f, double x, double step) {
    if (!(step > 0.0) || !std::isfinite(step))
        throw InvalidArgument("central_difference: step must be finite and > 0");
    if (step < 1e3 * std::numeric_limits<double>::epsilon() * std::abs(x))
        throw StepUnderflow("central_difference: step is below 1e3 * eps * |x|");

    double d[3];
    double h = step;
    for (double& level : d) {
        level = (f(x + h) - f(x - h)) / (2.0 * h);
        h *= 0.5;
    }
    // Error terms go as h^2, h^4, ...
    const double r1 = (4.0 * d[1] - d[0]) / 3.0;
    const double r2 = (4.0 * d[2] - d[1]) / 3.0;
    const double best = (16.0 * r2 - r1) / 15.0;
    return {best, std::abs(best - r2)};
}

} // namespace cpgas
