#include "gausslink/teleportation.hpp"

#include "gausslink/entanglement.hpp"
#include "gausslink/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace gausslink {

namespace {
constexpr double kUnitGainTolerance = 1e-9;
}

double induced_noise(const TwoModeStandardForm& form, double kappa) {
    return form.v * kappa * kappa + form.u - 2.0 * form.w * kappa;
}

GaussianChannelSpec induced_channel_spec(const TwoModeStandardForm& form, double kappa) {
    const Matrix id = Matrix::Identity(2, 2);
    return {kappa * id, induced_noise(form, kappa) * id};
}

BosonicChannel induced_channel(const TwoModeStandardForm& form, double kappa) {
    if (!(kappa > 0.0)) throw std::invalid_argument("induced_channel: kappa must be positive");
    if (std::abs(kappa - 1.0) < kUnitGainTolerance) {
        return {ChannelKind::kRandomDisplacement, 1.0, duan_quantity(form)};
    }
    const double eta = kappa * kappa;
    double n_e = induced_noise(form, kappa) / (2.0 * std::abs(1.0 - eta)) - 0.5;
    if (n_e < -1e-9) throw std::invalid_argument("induced_channel: negative thermal noise, resource is unphysical");
    n_e = std::max(0.0, n_e);
    return {kappa < 1.0 ? ChannelKind::kThermalLoss : ChannelKind::kThermalAmplification, eta, n_e};
}

double induced_q_lb_raw(const TwoModeStandardForm& form, double kappa) {
    return q_lb_raw(induced_channel(form, kappa));
}

GainSearchResult optimize_gain(const TwoModeStandardForm& form, const GainSearchOptions& options) {
    if (!(options.kappa_min > 0.0 && options.kappa_max > options.kappa_min && options.grid_points >= 3)) {
        throw std::invalid_argument("optimize_gain: invalid search options");
    }
    auto objective = [&form](double kappa) { return induced_q_lb_raw(form, kappa); };

    const int n = options.grid_points;
    const double log_lo = std::log(options.kappa_min);
    const double step = (std::log(options.kappa_max) - log_lo) / (n - 1);
    std::vector<double> grid(n);
    int best_i = 0;
    double best_val = -INFINITY;
    for (int i = 0; i < n; ++i) {
        grid[i] = std::exp(log_lo + step * i);
        const double val = objective(grid[i]);
        if (val > best_val) {
            best_val = val;
            best_i = i;
        }
    }
    double best_kappa = grid[best_i];

    // Golden-section refinement inside the neighbouring grid cells.
    double lo = grid[std::max(0, best_i - 1)];
    double hi = grid[std::min(n - 1, best_i + 1)];
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = objective(x1);
    double f2 = objective(x2);
    while (hi - lo > options.tolerance) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = objective(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = objective(x1);
        }
    }
    const double refined = 0.5 * (lo + hi);
    std::vector<double> candidates = {refined, 1.0};
    if (form.v > 0.0 && form.w > 0.0) candidates.push_back(form.w / form.v);
    for (double k : candidates) {
        if (k < options.kappa_min || k > options.kappa_max) continue;
        const double val = objective(k);
        if (val > best_val) {
            best_val = val;
            best_kappa = k;
        }
    }
    return {best_kappa, std::max(0.0, best_val), induced_channel(form, best_kappa)};
}

Matrix teleport_oracle(const Matrix& v_oe, const Matrix& v_in, double kappa) {
    if (v_oe.rows() != 4 || v_oe.cols() != 4 || v_in.rows() != 2 || v_in.cols() != 2) {
        throw std::invalid_argument("teleport_oracle: expected 4x4 resource and 2x2 input");
    }
    // Modes: 0 optical output, 1 microwave resource, 2 input.
    const GaussianState joint = tensor(GaussianState(v_oe), GaussianState(v_in));
    const Matrix bs = two_mode_symplectic(3, 1, 2, beam_splitter_50_50());
    const GaussianState mixed = apply_channel(joint, GaussianChannelSpec(bs, Matrix::Zero(6, 6)));

    // Feed-forward as a phase-space substitution: optical (q, p) are shifted by
    // -sqrt2 t1 x_1 - sqrt2 t2 x_2 with t1 = kappa (I + Z)/2, t2 = kappa (Z - I)/2.
    Matrix shift = Matrix::Identity(6, 6);
    const double g = std::numbers::sqrt2 * kappa;
    shift(0, 2) = -g;  // q_o -= sqrt2 kappa q_1
    shift(1, 5) = g;   // p_o += sqrt2 kappa p_2
    const GaussianState shifted = apply_channel(mixed, GaussianChannelSpec(shift, Matrix::Zero(6, 6)));

    // Homodyne q of mode 1 and p of mode 2; averaging the conditional mean over
    // outcomes adds G Sigma_m G^T back onto the conditional covariance.
    const std::size_t kept[] = {0};
    const std::size_t measured[] = {2, 5};
    const HomodyneResult cond = homodyne_condition(shifted, kept, measured);
    Matrix sigma_m(2, 2);
    sigma_m << shifted.cov()(2, 2), shifted.cov()(2, 5), shifted.cov()(5, 2), shifted.cov()(5, 5);
    Matrix out = cond.state.cov() + cond.gain * sigma_m * cond.gain.transpose();
    return 0.5 * (out + out.transpose());
}

}  // namespace gausslink
