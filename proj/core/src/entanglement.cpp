#include "gausslink/entanglement.hpp"

#include "gausslink/channel_metrics.hpp"
#include "gausslink/errors.hpp"
#include "gausslink/swapping.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gausslink {

namespace {

// PPT eigenvalues this close to 1 are roundoff of a separable input.
constexpr double kSeparableSlack = 1e-12;

double anti_squeezing(double gamma, double beta_plus, double beta_minus) {
    const double disc = std::max(0.0, gamma * gamma - beta_plus * beta_minus);
    // (gamma - sqrt(disc)) / beta_minus, rationalized.
    const double arg = beta_plus / (gamma + std::sqrt(disc));
    return arg > 1.0 ? 0.25 * std::log(arg) : 0.0;
}

}  // namespace

EofIntermediates eof_intermediates_general(const TwoModeStandardForm& form) {
    const double u = form.u;
    const double v = form.v;
    const double w = std::abs(form.w);
    const double det_v = TwoModeStandardForm{u, v, w}.covariance().determinant();
    const double det_a = u * u;
    const double det_b = v * v;
    const double det_c = -w * w;
    EofIntermediates out{};
    out.gamma = 2.0 * (det_v + 1.0) - (u - v) * (u - v);
    const double common = det_a + det_b - 2.0 * det_c + 2.0 * u * v + 2.0 * w * w;
    out.beta_plus = common + 4.0 * w * (u + v);
    out.beta_minus = common - 4.0 * w * (u + v);
    out.r_min = anti_squeezing(out.gamma, out.beta_plus, out.beta_minus);
    return out;
}

EofIntermediates eof_intermediates(const TwoModeStandardForm& form) {
    const double u = form.u;
    const double v = form.v;
    const double w = std::abs(form.w);
    const double det_v = (u * v - w * w) * (u * v - w * w);
    EofIntermediates out{};
    out.gamma = 2.0 * (det_v + 1.0) - (u - v) * (u - v);
    out.beta_plus = (u + v + 2.0 * w) * (u + v + 2.0 * w);
    out.beta_minus = (u + v - 2.0 * w) * (u + v - 2.0 * w);
    out.r_min = anti_squeezing(out.gamma, out.beta_plus, out.beta_minus);
    return out;
}

double ppt_min_symplectic_eigenvalue(const TwoModeStandardForm& form) {
    // The partial transpose of the standard form is [[u, w], [w, v]] (x) I, so
    // its symplectic eigenvalues are the eigenvalues of the 2x2 block.
    const double u = form.u;
    const double v = form.v;
    const double w = form.w;
    return 2.0 * (u * v - w * w) / (u + v + std::hypot(u - v, 2.0 * w));
}

double entanglement_of_formation(const TwoModeStandardForm& form) {
    if (!(form.u > 0.0 && form.v > 0.0)) {
        throw std::invalid_argument("entanglement_of_formation: u and v must be positive");
    }
    if (ppt_min_symplectic_eigenvalue(form) >= 1.0 - kSeparableSlack) return 0.0;
    const EofIntermediates it = eof_intermediates(form);
    if (it.beta_minus <= 1e-300) {
        throw EprSingularError("entanglement_of_formation: u + v = 2|w|, ideal EPR correlations");
    }
    const double s = std::sinh(it.r_min);
    return g_function(s * s);
}

double duan_quantity(const TwoModeStandardForm& form) { return form.u + form.v - 2.0 * form.w; }

double entanglement_rate(const TransducerParams& p, double tau, RateTarget target, const QuadratureSpec& spec) {
    if (!(tau >= 0.0 && tau <= 1.0)) throw std::invalid_argument("entanglement_rate: tau must lie in [0, 1]");
    if (p.detuning != Detuning::kBlue) throw std::invalid_argument("entanglement_rate: requires blue detuning");
    if (!stability_check(p)) throw UnstableParametersError("entanglement_rate: parameters are unstable");

    auto density = [&](double omega) {
        const TwoModeStandardForm source = apply_optical_loss(output_mo_covariance(p, omega), tau);
        return entanglement_of_formation(target == RateTarget::kSource ? source : mm_form(source));
    };
    const double span = spec.span_factor * std::max({p.kappa_o(), p.kappa_e(), p.kappa_m});
    return integrate_trapezoid(density, -span, span, spec).value / (2.0 * std::numbers::pi);
}

}  // namespace gausslink
