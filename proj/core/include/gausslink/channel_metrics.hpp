#pragma once

// Coherent-information style lower bounds on the quantum capacity of the
// single-mode bosonic channels that appear in direct and teleportation-based
// transduction. All values are in bits per channel use unless noted.

#include "gausslink/quadrature.hpp"
#include "gausslink/transducer.hpp"

#include <optional>
#include <string_view>

namespace gausslink {

enum class ChannelKind { kThermalLoss, kThermalAmplification, kRandomDisplacement };

std::string_view to_string(ChannelKind kind);

/// Single-mode phase-insensitive bosonic channel.
///
/// `eta` is the transmissivity (< 1), gain (> 1) or exactly 1 for a random
/// displacement. `noise` is the thermal occupation n_e for loss/amplification
/// and the added variance sigma^2 (hbar = 2) for displacement.
struct BosonicChannel {
    ChannelKind kind;
    double eta;
    double noise;

    /// Throws std::invalid_argument when the fields are inconsistent.
    void validate() const;
    GaussianChannelSpec spec() const;
};

/// g(x) = (x + 1) log2(x + 1) - x log2(x), with g(0) = 0.
double g_function(double x);

/// log2(eta / |1 - eta|) - g(n_e), without clamping.
double q_lb_loss_amp_raw(double eta, double n_e);
double q_lb_loss_amp(double eta, double n_e);

/// log2(2 / (e sigma^2)), without clamping.
double q_lb_displacement_raw(double sigma_sq);
double q_lb_displacement(double sigma_sq);

double q_lb_raw(const BosonicChannel& ch);
double q_lb(const BosonicChannel& ch);

/// Minimum C_om * C_em for the resonant DQT efficiency to exceed 1/2.
/// Empty when zeta_o * zeta_e <= 1/2: no cooperativity achieves it.
std::optional<double> dqt_capacity_boundary(double zeta_o, double zeta_e);

/// Clamped DQT bound at a single frequency.
double dqt_capacity_density(const TransducerParams& p, double omega);

/// Integral of the DQT capacity density over frequency (no 1/2pi), in
/// ebits per unit time of the rate unit.
double q_lb_bandwidth_integrated(const TransducerParams& p, const QuadratureSpec& spec = {});

}  // namespace gausslink
