#pragma once

// Microwave-microwave entanglement from two transducers whose optical outputs
// are jointly measured, plus the optical-loss and click-heralding models.

#include "gausslink/quadrature.hpp"
#include "gausslink/transducer.hpp"

namespace gausslink {

struct SwapSetup {
    TransducerParams device_1;
    TransducerParams device_2;
    double tau = 1.0;             ///< optical path transmissivity per arm
    double pulse_duration = 1.0;  ///< click-scheme pulse length

    /// Throws std::invalid_argument or UnstableParametersError.
    void validate() const;
};

/// V_MM for identical devices: (v - w^2/2u) I on the diagonal blocks and
/// (w^2/2u) Z off-diagonal. Throws std::invalid_argument if u <= 0.
Matrix mm_swap_closed(const TwoModeStandardForm& form);

/// Standard form (v - w^2/2u, v - w^2/2u, w^2/2u) of mm_swap_closed.
TwoModeStandardForm mm_form(const TwoModeStandardForm& form);

/// Conditions V1 (+) V2 on a general-dyne measurement of both optical modes
/// with a two-mode squeezed seed of squeezing r, returning the 4x4 covariance
/// of (microwave 1, microwave 2). Devices may differ.
Matrix mm_swap_numeric(const TwoModeStandardForm& form1, const TwoModeStandardForm& form2, double r);

/// Ideal EPR projection of the optical pair (the r -> infinity limit).
Matrix mm_swap_epr(const TwoModeStandardForm& form1, const TwoModeStandardForm& form2);

/// u -> tau (u - 1) + 1, w -> sqrt(tau) w.
TwoModeStandardForm apply_optical_loss(const TwoModeStandardForm& form, double tau);

/// Mean output photon flux per unit bandwidth at omega, (S_qq + S_pp - 2) / 4.
double photon_flux_density(const TransducerParams& p, double omega);

struct ClickRates {
    double r_t;  ///< optical photon rate after path loss
    double r_b;  ///< heralded Bell-pair rate, approximated as 2 r_t exp(-r_t dt)
};

/// 2 r_t exp(-r_t dt).
double heralded_bell_rate(double r_t, double dt);

ClickRates click_rate(const TransducerParams& p, double tau, double dt, const QuadratureSpec& spec = {});

/// Capacity lower bound of the channel induced by teleporting over `form_mm`
/// with the optimal gain.
double mm_capacity(const TwoModeStandardForm& form_mm);

}  // namespace gausslink
