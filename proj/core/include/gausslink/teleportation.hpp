#pragma once

// Teleportation over a two-mode standard-form resource induces a single-mode
// bosonic channel with T = kappa I and N = (v kappa^2 + u - 2 w kappa) I.
// The optical mode is the output, the microwave mode is consumed by the
// Bell measurement, and kappa is the feed-forward gain.

#include "gausslink/channel_metrics.hpp"
#include "gausslink/transducer.hpp"

namespace gausslink {

/// v kappa^2 + u - 2 w kappa: the added noise variance of the induced channel.
double induced_noise(const TwoModeStandardForm& form, double kappa);

GaussianChannelSpec induced_channel_spec(const TwoModeStandardForm& form, double kappa);

/// Classifies the induced channel: kappa < 1 thermal loss, kappa > 1 thermal
/// amplification (both with eta' = kappa^2), |kappa - 1| < 1e-9 random
/// displacement with sigma^2 = u + v - 2w.
BosonicChannel induced_channel(const TwoModeStandardForm& form, double kappa);

/// Unclamped bound of the induced channel at gain kappa.
double induced_q_lb_raw(const TwoModeStandardForm& form, double kappa);

struct GainSearchOptions {
    double kappa_min = 1e-3;
    double kappa_max = 10.0;
    int grid_points = 400;
    double tolerance = 1e-6;  ///< golden-section stop on bracket width
};

struct GainSearchResult {
    double kappa_opt;
    double q_lb_opt;  ///< clamped at 0
    BosonicChannel channel;
};

GainSearchResult optimize_gain(const TwoModeStandardForm& form, const GainSearchOptions& options = {});

/// Output covariance of the explicit protocol: the input is mixed with the
/// microwave half of `v_oe` on a 50:50 beam splitter, one q and one p
/// quadrature are homodyned, and the optical mode is displaced by kappa times
/// the outcomes. `v_oe` is ordered (optical, microwave).
Matrix teleport_oracle(const Matrix& v_oe, const Matrix& v_in, double kappa);

}  // namespace gausslink
