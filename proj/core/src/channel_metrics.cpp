#include "gausslink/channel_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gausslink {

namespace {
constexpr double kUnitGainTolerance = 1e-9;
}

std::string_view to_string(ChannelKind kind) {
    switch (kind) {
        case ChannelKind::kThermalLoss: return "thermal_loss";
        case ChannelKind::kThermalAmplification: return "thermal_amplification";
        case ChannelKind::kRandomDisplacement: return "random_displacement";
    }
    return "unknown";
}

void BosonicChannel::validate() const {
    if (!(eta > 0.0)) throw std::invalid_argument("BosonicChannel: eta must be positive");
    if (!(noise >= 0.0)) throw std::invalid_argument("BosonicChannel: noise must be non-negative");
    const bool unit = std::abs(eta - 1.0) < kUnitGainTolerance;
    const bool consistent = (kind == ChannelKind::kRandomDisplacement && unit) ||
                            (kind == ChannelKind::kThermalLoss && eta < 1.0 && !unit) ||
                            (kind == ChannelKind::kThermalAmplification && eta > 1.0 && !unit);
    if (!consistent) throw std::invalid_argument("BosonicChannel: kind inconsistent with eta");
}

GaussianChannelSpec BosonicChannel::spec() const {
    validate();
    const Matrix id = Matrix::Identity(2, 2);
    switch (kind) {
        case ChannelKind::kThermalLoss:
            return {std::sqrt(eta) * id, (1.0 - eta) * (2.0 * noise + 1.0) * id};
        case ChannelKind::kThermalAmplification:
            return {std::sqrt(eta) * id, (eta - 1.0) * (2.0 * noise + 1.0) * id};
        case ChannelKind::kRandomDisplacement:
            break;
    }
    return {id, noise * id};
}

double g_function(double x) {
    if (!(x >= 0.0)) throw std::invalid_argument("g_function: argument must be non-negative");
    if (x == 0.0) return 0.0;
    return std::log2(x + 1.0) + x * std::log1p(1.0 / x) / std::numbers::ln2;
}

double q_lb_loss_amp_raw(double eta, double n_e) {
    if (!(eta > 0.0)) throw std::invalid_argument("q_lb_loss_amp: eta must be positive");
    if (std::abs(eta - 1.0) < kUnitGainTolerance) {
        throw std::invalid_argument("q_lb_loss_amp: eta = 1, use the displacement bound");
    }
    return std::log2(eta / std::abs(1.0 - eta)) - g_function(n_e);
}

double q_lb_loss_amp(double eta, double n_e) { return std::max(0.0, q_lb_loss_amp_raw(eta, n_e)); }

double q_lb_displacement_raw(double sigma_sq) {
    if (!(sigma_sq > 0.0)) throw std::invalid_argument("q_lb_displacement: sigma^2 must be positive");
    return std::log2(2.0 / (std::numbers::e * sigma_sq));
}

double q_lb_displacement(double sigma_sq) { return std::max(0.0, q_lb_displacement_raw(sigma_sq)); }

double q_lb_raw(const BosonicChannel& ch) {
    ch.validate();
    return ch.kind == ChannelKind::kRandomDisplacement ? q_lb_displacement_raw(ch.noise)
                                                       : q_lb_loss_amp_raw(ch.eta, ch.noise);
}

double q_lb(const BosonicChannel& ch) { return std::max(0.0, q_lb_raw(ch)); }

std::optional<double> dqt_capacity_boundary(double zeta_o, double zeta_e) {
    if (!(zeta_o > 0.0 && zeta_o <= 1.0 && zeta_e > 0.0 && zeta_e <= 1.0)) {
        throw std::invalid_argument("dqt_capacity_boundary: extraction ratios must lie in (0, 1]");
    }
    const double denom = 2.0 * std::sqrt(2.0 * zeta_o * zeta_e) - 2.0;
    if (!(denom > 0.0)) return std::nullopt;
    return 1.0 / (denom * denom);
}

double dqt_capacity_density(const TransducerParams& p, double omega) {
    const DqtChannel ch = dqt_channel(p, omega);
    if (ch.eta <= 0.5) return 0.0;
    return q_lb_loss_amp(ch.eta, ch.n_e);
}

double q_lb_bandwidth_integrated(const TransducerParams& p, const QuadratureSpec& spec) {
    p.validate();
    const double span = spec.span_factor * std::max({p.kappa_o(), p.kappa_e(), p.kappa_m});
    auto density = [&p](double omega) { return dqt_capacity_density(p, omega); };
    return integrate_trapezoid(density, -span, span, spec).value;
}

}  // namespace gausslink
