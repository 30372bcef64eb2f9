#pragma once

// Phase-space algebra for multimode Gaussian states.
//
// Convention throughout the library: hbar = 2, so the vacuum covariance is the
// identity; quadratures are ordered (q1, p1, q2, p2, ...).

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace gausslink {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kSymmetryTolerance = 1e-10;
inline constexpr double kPsdFloor = -1e-9;
inline constexpr double kPinvCutoff = 1e-12;
inline constexpr double kMaxConditionNumber = 1e12;

/// Block-diagonal symplectic form, one [[0,1],[-1,0]] block per mode.
class SymplecticForm {
public:
    explicit SymplecticForm(std::size_t n_modes);

    std::size_t n_modes() const noexcept { return n_modes_; }
    const Matrix& matrix() const noexcept { return matrix_; }

private:
    std::size_t n_modes_;
    Matrix matrix_;
};

SymplecticForm symplectic_form(std::size_t n_modes);

/// Mean vector and covariance matrix of an n-mode Gaussian state.
///
/// Construction only enforces shape and symmetry. Physicality
/// (cov + i*Omega >= 0) is a separate query because intermediate objects in
/// some pipelines are classical phase-space transforms rather than states.
class GaussianState {
public:
    GaussianState(Vector mean, Matrix cov);
    explicit GaussianState(Matrix cov);

    static GaussianState vacuum(std::size_t n_modes);
    static GaussianState thermal(double n_mean, std::size_t n_modes = 1);
    /// Two-mode squeezed vacuum: cosh(2r) I on the diagonal blocks, sinh(2r) Z off-diagonal.
    static GaussianState two_mode_squeezed(double r);

    std::size_t n_modes() const noexcept { return static_cast<std::size_t>(cov_.rows() / 2); }
    const Vector& mean() const noexcept { return mean_; }
    const Matrix& cov() const noexcept { return cov_; }

    bool is_physical(double floor = kPsdFloor) const;

private:
    Vector mean_;
    Matrix cov_;
};

/// Gaussian channel acting as mean -> T mean + d, cov -> T cov T^T + N.
struct GaussianChannelSpec {
    Matrix T;
    Matrix N;
    Vector d;

    GaussianChannelSpec(Matrix t, Matrix n);
    GaussianChannelSpec(Matrix t, Matrix n, Vector displacement);

    static GaussianChannelSpec identity(std::size_t n_modes);
    static GaussianChannelSpec thermal_loss(double eta, double n_e);
};

/// Smallest eigenvalue of the Hermitian matrix cov + i*Omega.
double physicality_margin(const Matrix& cov);
bool is_physical_covariance(const Matrix& cov, double floor = kPsdFloor);

GaussianState apply_channel(const GaussianState& state, const GaussianChannelSpec& ch);

/// Complete-positivity check N + i*Omega - i*T*Omega*T^T >= 0.
bool validate_channel(const GaussianChannelSpec& ch);

GaussianState tensor(const GaussianState& a, const GaussianState& b);

GaussianState extract_modes(const GaussianState& state, std::span<const std::size_t> indices);

/// Result of conditioning on a general-dyne outcome.
struct ConditionalState {
    GaussianState state;
    double probability_density;
};

/// Options for the Schur-complement solve. When the normal matrix is
/// ill-conditioned and the fallback is disabled, a NumericalError is raised.
struct ConditioningOptions {
    bool allow_pseudo_inverse = true;
};

/// Conditions the unmeasured modes on a general-dyne outcome.
///
/// The POVM seed has covariance `v_meas` on the measured modes. The
/// conditional covariance Gamma_A - Gamma_AB (Gamma_B + V)^-1 Gamma_AB^T does
/// not depend on the outcome; the returned density is the unnormalized
/// exp(-r^T (Gamma_B + V)^-1 r) / (pi^m sqrt(det(Gamma_B + V))) form.
ConditionalState general_dyne_condition(const GaussianState& state,
                                        std::span<const std::size_t> measured,
                                        const Matrix& v_meas,
                                        const Vector& outcome,
                                        const ConditioningOptions& options = {});

/// Ideal homodyne on a set of quadrature indices (limit of infinitely squeezed
/// general-dyne). Returns the conditional state of `kept` modes and the gain
/// matrix G such that the conditional mean is mean_A + G (outcome - mean_m).
struct HomodyneResult {
    GaussianState state;
    Matrix gain;
};

HomodyneResult homodyne_condition(const GaussianState& state,
                                  std::span<const std::size_t> kept_modes,
                                  std::span<const std::size_t> measured_quadratures);

/// r -> infinity limit of general-dyne conditioning with a two-mode squeezed
/// seed on `measured_pair`: projects onto the EPR combinations q1 - q2, p1 + p2.
GaussianState homodyne_epr_limit(const GaussianState& state,
                                 std::pair<std::size_t, std::size_t> measured_pair);

std::complex<double> characteristic_at(const GaussianState& state, const Vector& xi);
double wigner_at(const GaussianState& state, const Vector& x);

/// Sorted (ascending) symplectic eigenvalues of a symmetric positive-definite covariance.
std::vector<double> symplectic_eigenvalues(const Matrix& cov);

/// Embeds a 2x2 block into the symplectic transform acting on modes (i, j) of an n-mode system.
Matrix two_mode_symplectic(std::size_t n_modes, std::size_t i, std::size_t j, const Matrix& s4);

/// 50:50 beam splitter on two modes: (x_i, x_j) -> ((x_i - x_j)/sqrt2, (x_i + x_j)/sqrt2).
Matrix beam_splitter_50_50();

}  // namespace gausslink
