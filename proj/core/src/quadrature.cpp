#include "gausslink/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gausslink {

IntegrationResult integrate_trapezoid(const std::function<double(double)>& f, double a, double b,
                                      const QuadratureSpec& spec) {
    if (!(b > a)) throw std::invalid_argument("integrate_trapezoid: empty interval");
    if (spec.initial_intervals < 1) throw std::invalid_argument("integrate_trapezoid: bad initial grid");

    long n = spec.initial_intervals;
    double h = (b - a) / static_cast<double>(n);
    double sum = 0.5 * (f(a) + f(b));
    for (long k = 1; k < n; ++k) sum += f(a + static_cast<double>(k) * h);
    double estimate = sum * h;

    for (int level = 0; level < spec.max_levels; ++level) {
        // New nodes sit at the midpoints of the current grid.
        double mid = 0.0;
        for (long k = 0; k < n; ++k) mid += f(a + (static_cast<double>(k) + 0.5) * h);
        sum += mid;
        n *= 2;
        h *= 0.5;
        const double refined = sum * h;
        const double change = std::abs(refined - estimate);
        estimate = refined;
        // Accept only after two refinements.
        if (level >= 1 && change <= std::max(spec.rel_tol * std::abs(refined), spec.abs_tol)) {
            return {estimate, static_cast<int>(n), true};
        }
    }
    return {estimate, static_cast<int>(n), false};
}

}  // namespace gausslink
