#include "gausslink/swapping.hpp"

#include "gausslink/errors.hpp"
#include "gausslink/teleportation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gausslink {

namespace {

// Vacuum-subtracted flux below this is roundoff of an empty optical output.
constexpr double kFluxRoundoff = 1e-13;

void require_tau(double tau, const char* where) {
    if (!(tau >= 0.0 && tau <= 1.0)) throw std::invalid_argument(std::string(where) + ": tau must lie in [0, 1]");
}

}  // namespace

void SwapSetup::validate() const {
    require_tau(tau, "SwapSetup");
    if (!(pulse_duration > 0.0)) throw std::invalid_argument("SwapSetup: pulse_duration must be positive");
    for (const TransducerParams* d : {&device_1, &device_2}) {
        d->validate();
        if (d->detuning != Detuning::kBlue) throw std::invalid_argument("SwapSetup: devices must be blue detuned");
        if (!stability_check(*d)) throw UnstableParametersError("SwapSetup: device parameters are unstable");
    }
}

Matrix mm_swap_closed(const TwoModeStandardForm& form) {
    const TwoModeStandardForm mm = mm_form(form);
    return mm.covariance();
}

TwoModeStandardForm mm_form(const TwoModeStandardForm& form) {
    if (!(form.u > 0.0)) throw std::invalid_argument("mm_form: u must be positive");
    const double c = form.w * form.w / (2.0 * form.u);
    return {form.v - c, form.v - c, c};
}

Matrix mm_swap_numeric(const TwoModeStandardForm& form1, const TwoModeStandardForm& form2, double r) {
    if (!(r >= 0.0)) throw std::invalid_argument("mm_swap_numeric: r must be non-negative");
    // Modes: optical 1, microwave 1, optical 2, microwave 2.
    const GaussianState joint = tensor(form1.state(), form2.state());
    const std::size_t optical[] = {0, 2};
    const ConditionalState cond =
        general_dyne_condition(joint, optical, GaussianState::two_mode_squeezed(r).cov(), Vector::Zero(4));
    return cond.state.cov();
}

Matrix mm_swap_epr(const TwoModeStandardForm& form1, const TwoModeStandardForm& form2) {
    const GaussianState joint = tensor(form1.state(), form2.state());
    return homodyne_epr_limit(joint, {0, 2}).cov();
}

TwoModeStandardForm apply_optical_loss(const TwoModeStandardForm& form, double tau) {
    require_tau(tau, "apply_optical_loss");
    return {tau * (form.u - 1.0) + 1.0, form.v, std::sqrt(tau) * form.w};
}

double photon_flux_density(const TransducerParams& p, double omega) {
    const GaussianState state = output_mo_state(p, omega);
    const Matrix& cov = state.cov();
    const double flux = (cov(0, 0) + cov(1, 1) - 2.0) / 4.0;
    return flux > kFluxRoundoff ? flux : 0.0;
}

double heralded_bell_rate(double r_t, double dt) { return 2.0 * r_t * std::exp(-r_t * dt); }

ClickRates click_rate(const TransducerParams& p, double tau, double dt, const QuadratureSpec& spec) {
    require_tau(tau, "click_rate");
    if (!(dt > 0.0)) throw std::invalid_argument("click_rate: dt must be positive");
    if (p.detuning != Detuning::kBlue) throw std::invalid_argument("click_rate: requires blue detuning");
    if (!stability_check(p)) throw UnstableParametersError("click_rate: parameters are unstable");

    const double span = spec.span_factor * std::max({p.kappa_o(), p.kappa_e(), p.kappa_m});
    auto density = [&p](double omega) { return photon_flux_density(p, omega); };
    const double flux = integrate_trapezoid(density, -span, span, spec).value;
    const double r_t = tau * flux / (2.0 * std::numbers::pi);
    return {r_t, heralded_bell_rate(r_t, dt)};
}

double mm_capacity(const TwoModeStandardForm& form_mm) { return optimize_gain(form_mm).q_lb_opt; }

}  // namespace gausslink
