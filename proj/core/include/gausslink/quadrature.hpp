#pragma once

#include <functional>

namespace gausslink {

/// Settings for the frequency integrals. The integration window is
/// [-span_factor * max_linewidth, span_factor * max_linewidth].
struct QuadratureSpec {
    double rel_tol = 1e-6;
    double abs_tol = 1e-12;  ///< floor for integrands that vanish up to roundoff
    double span_factor = 10.0;
    int initial_intervals = 64;
    int max_levels = 22;
};

struct IntegrationResult {
    double value;
    int intervals;   ///< number of subintervals at the accepted level
    bool converged;
};

/// Trapezoid rule on [a, b], halving the step until two successive levels
/// differ by less than max(rel_tol * |value|, abs_tol). Reuses every
/// previously evaluated node.
IntegrationResult integrate_trapezoid(const std::function<double(double)>& f, double a, double b,
                                      const QuadratureSpec& spec = {});

}  // namespace gausslink
