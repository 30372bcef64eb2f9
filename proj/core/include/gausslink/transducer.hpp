#pragma once

// Frequency-domain input-output model of a piezo-optomechanical transducer.
//
// Port order for the red-detuned (beam-splitter) configuration:
//   (a_in,c, a_in,i, c_in,c, c_in,i, b_in)
// Port order for the blue-detuned (down-conversion) configuration:
//   (a^dag_in,c, a^dag_in,i, b_in, c_in,c, c_in,i)
// where a is optical, b mechanical and c microwave. All rates are angular
// rates in a common unit; omega is the detuning from the on-resonance point.

#include "gausslink/gaussian_state.hpp"

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <span>
#include <utility>

namespace gausslink {

enum class Detuning { kRed, kBlue };

struct TransducerParams {
    double g_om = 0.0;       ///< enhanced optomechanical coupling
    double g_em = 0.0;       ///< piezo-mechanical coupling
    double kappa_o_c = 1.0;  ///< optical coupling-port rate
    double kappa_o_i = 0.0;  ///< optical intrinsic loss
    double kappa_e_c = 1.0;  ///< microwave coupling-port rate
    double kappa_e_i = 0.0;  ///< microwave intrinsic loss
    double kappa_m = 1.0;    ///< mechanical intrinsic loss
    double n_th = 0.0;       ///< shared mechanical/microwave bath occupation
    Detuning detuning = Detuning::kBlue;

    double kappa_o() const noexcept { return kappa_o_c + kappa_o_i; }
    double kappa_e() const noexcept { return kappa_e_c + kappa_e_i; }
    double zeta_o() const noexcept { return kappa_o_c / kappa_o(); }
    double zeta_e() const noexcept { return kappa_e_c / kappa_e(); }

    /// Throws std::invalid_argument on negative rates or vanishing total linewidths.
    void validate() const;

    /// Back-solves couplings from cooperativities and splits the linewidths by
    /// the extraction ratios.
    static TransducerParams from_cooperativities(double c_om, double c_em, double zeta_o, double zeta_e,
                                                 double n_th, Detuning detuning, double kappa_o = 1.0,
                                                 double kappa_e = 1.0, double kappa_m = 1.0);
};

/// (u, v, w) of the two-mode covariance [[u I, w Z], [w Z, v I]] in (optical, microwave) order.
struct TwoModeStandardForm {
    double u = 1.0;
    double v = 1.0;
    double w = 0.0;

    Matrix covariance() const;
    GaussianState state() const { return GaussianState(covariance()); }
    bool is_physical() const;
};

using ScatteringMatrix = Eigen::Matrix<std::complex<double>, 5, 5>;
using QuadratureScattering = Eigen::Matrix<double, 10, 10>;

struct Cooperativities {
    double c_om;
    double c_em;
};

Cooperativities cooperativities(const TransducerParams& p);

// Red detuning: direct transduction.

ScatteringMatrix scattering_red(const TransducerParams& p, double omega);

/// Conversion efficiency at resonance, 4 C_om C_em zeta_o zeta_e / (1 + C_om + C_em)^2.
double dqt_efficiency(const TransducerParams& p);

/// Frequency-resolved efficiency 4 C_om C_em zeta_o zeta_e / |C_om a + C_em b + a b c|^2.
double dqt_efficiency_bandwidth(const TransducerParams& p, double omega);

/// Thermal-loss description of the microwave-to-optical conversion at one frequency.
struct DqtChannel {
    double eta;
    double n_e;

    GaussianChannelSpec spec() const { return GaussianChannelSpec::thermal_loss(eta, n_e); }
};

DqtChannel dqt_channel(const TransducerParams& p, double omega = 0.0);

// Blue detuning: entangled microwave-optical source.

/// Drift matrix of the down-conversion configuration (on resonance).
Eigen::Matrix3cd drift_blue(const TransducerParams& p);

ScatteringMatrix scattering_blue(const TransducerParams& p, double omega);

/// Real symplectic map on the (q, p) pairs of all five ports induced by the
/// blue-detuned scattering matrix. Throws NumericalError if the imaginary
/// residue exceeds 1e-12.
QuadratureScattering quadrature_scattering(const ScatteringMatrix& s_blue);

bool stability_check(const TransducerParams& p);

/// Full 4x4 output covariance of (optical coupling port, microwave coupling port).
GaussianState output_mo_state(const TransducerParams& p, double omega);

/// Numeric standard form: (u, v) are the half-traces of the diagonal blocks
/// and w = sqrt(|det V_C|).
TwoModeStandardForm output_mo_covariance(const TransducerParams& p, double omega = 0.0);

/// Variants of the resonant closed form that the numeric path arbitrates between.
enum class ClosedFormConvention {
    kScaledSingle,    ///< v with an extra C_om factor, N_th = n_th
    kScaledDouble,    ///< v with an extra C_om factor, N_th = 2 n_th
    kCorrectedSingle,  ///< v without the extra C_om factor, N_th = n_th
    kCorrectedDouble,  ///< v without the extra C_om factor, N_th = 2 n_th
};

/// Resonant (omega = 0) closed form for (u, v, w). Defaults to the convention
/// that matches the scattering calculation.
TwoModeStandardForm output_mo_closed_form(const TransducerParams& p,
                                          ClosedFormConvention convention = ClosedFormConvention::kCorrectedSingle);

/// Outcome of arbitrating the closed-form conventions against the numeric path.
struct ConventionResolution {
    std::optional<ClosedFormConvention> convention;  ///< empty: numeric path is authoritative
    double max_error_zero_noise;                     ///< closed vs numeric at n_th = 0 for the adopted variant
    double max_error_thermal;                        ///< same, over the supplied thermal draws
};

/// Tests every convention against the numeric path on `draws` and keeps the
/// first one that agrees to `tolerance` on all of them.
ConventionResolution resolve_closed_form_convention(std::span<const TransducerParams> draws,
                                                    double tolerance = 1e-9);

}  // namespace gausslink
