#include "gausslink/gaussian_state.hpp"

#include "gausslink/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gausslink {

namespace {

using ComplexMatrix = Eigen::MatrixXcd;

void require_symmetric(const Matrix& m, const char* what) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument(std::string(what) + ": matrix is not square");
    }
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance * scale) {
        throw std::invalid_argument(std::string(what) + ": matrix is not symmetric");
    }
}

double min_hermitian_eigenvalue(const ComplexMatrix& h) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

// Inverse (or pseudo-inverse) of a symmetric matrix together with its log
// (pseudo-)determinant.
struct SymmetricInverse {
    Matrix inverse;
    double log_det;
    bool pseudo;
};

SymmetricInverse invert_symmetric(const Matrix& m, bool allow_pseudo_inverse) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    const Vector& lambda = solver.eigenvalues();
    const Matrix& q = solver.eigenvectors();
    const double largest = lambda.cwiseAbs().maxCoeff();
    const double smallest = lambda.cwiseAbs().minCoeff();

    const bool well_conditioned =
        largest > 0.0 && smallest > 0.0 && largest / smallest < kMaxConditionNumber;
    if (!well_conditioned && !allow_pseudo_inverse) {
        throw NumericalError("measurement normal matrix is singular or ill-conditioned");
    }

    const double cutoff = well_conditioned ? 0.0 : kPinvCutoff * largest;
    Vector inv_lambda = Vector::Zero(lambda.size());
    double log_det = 0.0;
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        if (std::abs(lambda(i)) > cutoff) {
            inv_lambda(i) = 1.0 / lambda(i);
            log_det += std::log(std::abs(lambda(i)));
        }
    }
    return {q * inv_lambda.asDiagonal() * q.transpose(), log_det, !well_conditioned};
}

std::vector<Eigen::Index> quadrature_indices(std::span<const std::size_t> modes) {
    std::vector<Eigen::Index> out;
    out.reserve(modes.size() * 2);
    for (std::size_t m : modes) {
        out.push_back(static_cast<Eigen::Index>(2 * m));
        out.push_back(static_cast<Eigen::Index>(2 * m + 1));
    }
    return out;
}

Matrix select(const Matrix& m, const std::vector<Eigen::Index>& rows,
              const std::vector<Eigen::Index>& cols) {
    Matrix out(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            out(i, j) = m(rows[i], cols[j]);
        }
    }
    return out;
}

Vector select(const Vector& v, const std::vector<Eigen::Index>& rows) {
    Vector out(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) out(i) = v(rows[i]);
    return out;
}

void require_distinct_in_range(std::span<const std::size_t> modes, std::size_t n_modes,
                               const char* what) {
    std::vector<std::size_t> sorted(modes.begin(), modes.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument(std::string(what) + ": duplicate mode index");
    }
    if (!sorted.empty() && sorted.back() >= n_modes) {
        throw std::out_of_range(std::string(what) + ": mode index out of range");
    }
}

std::vector<std::size_t> complement_modes(std::size_t n_modes, std::span<const std::size_t> excluded) {
    std::vector<std::size_t> kept;
    for (std::size_t m = 0; m < n_modes; ++m) {
        if (std::find(excluded.begin(), excluded.end(), m) == excluded.end()) kept.push_back(m);
    }
    return kept;
}

Matrix symmetrize(const Matrix& m) { return 0.5 * (m + m.transpose()); }

}  // namespace

SymplecticForm::SymplecticForm(std::size_t n_modes) : n_modes_(n_modes) {
    if (n_modes == 0) throw std::invalid_argument("symplectic_form: mode count must be positive");
    const auto dim = static_cast<Eigen::Index>(2 * n_modes);
    matrix_ = Matrix::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; k += 2) {
        matrix_(k, k + 1) = 1.0;
        matrix_(k + 1, k) = -1.0;
    }
}

SymplecticForm symplectic_form(std::size_t n_modes) { return SymplecticForm(n_modes); }

GaussianState::GaussianState(Vector mean, Matrix cov) : mean_(std::move(mean)), cov_(std::move(cov)) {
    if (mean_.size() == 0) mean_ = Vector::Zero(cov_.rows());
    if (cov_.rows() == 0 || cov_.rows() % 2 != 0) {
        throw std::invalid_argument("GaussianState: covariance dimension must be 2n, n >= 1");
    }
    require_symmetric(cov_, "GaussianState");
    if (mean_.size() != cov_.rows()) {
        throw std::invalid_argument("GaussianState: mean length does not match covariance");
    }
}

GaussianState::GaussianState(Matrix cov) : GaussianState(Vector(), std::move(cov)) {}

GaussianState GaussianState::vacuum(std::size_t n_modes) {
    const auto dim = static_cast<Eigen::Index>(2 * n_modes);
    return GaussianState(Matrix::Identity(dim, dim));
}

GaussianState GaussianState::thermal(double n_mean, std::size_t n_modes) {
    if (n_mean < 0.0) throw std::invalid_argument("thermal: negative occupation");
    const auto dim = static_cast<Eigen::Index>(2 * n_modes);
    return GaussianState((2.0 * n_mean + 1.0) * Matrix::Identity(dim, dim));
}

GaussianState GaussianState::two_mode_squeezed(double r) {
    Matrix cov = Matrix::Zero(4, 4);
    const double c = std::cosh(2.0 * r);
    const double s = std::sinh(2.0 * r);
    cov.diagonal().setConstant(c);
    cov(0, 2) = cov(2, 0) = s;
    cov(1, 3) = cov(3, 1) = -s;
    return GaussianState(cov);
}

bool GaussianState::is_physical(double floor) const { return physicality_margin(cov_) >= floor; }

GaussianChannelSpec::GaussianChannelSpec(Matrix t, Matrix n)
    : GaussianChannelSpec(std::move(t), std::move(n), Vector()) {}

GaussianChannelSpec::GaussianChannelSpec(Matrix t, Matrix n, Vector displacement)
    : T(std::move(t)), N(std::move(n)), d(std::move(displacement)) {
    if (T.rows() != T.cols() || N.rows() != N.cols() || T.rows() != N.rows()) {
        throw std::invalid_argument("GaussianChannelSpec: T and N must be square of equal size");
    }
    require_symmetric(N, "GaussianChannelSpec");
    if (d.size() == 0) d = Vector::Zero(T.rows());
    if (d.size() != T.rows()) {
        throw std::invalid_argument("GaussianChannelSpec: displacement length mismatch");
    }
}

GaussianChannelSpec GaussianChannelSpec::identity(std::size_t n_modes) {
    const auto dim = static_cast<Eigen::Index>(2 * n_modes);
    return {Matrix::Identity(dim, dim), Matrix::Zero(dim, dim)};
}

GaussianChannelSpec GaussianChannelSpec::thermal_loss(double eta, double n_e) {
    return {std::sqrt(eta) * Matrix::Identity(2, 2),
            (1.0 - eta) * (2.0 * n_e + 1.0) * Matrix::Identity(2, 2)};
}

double physicality_margin(const Matrix& cov) {
    const auto n = static_cast<std::size_t>(cov.rows() / 2);
    const Matrix omega = symplectic_form(n).matrix();
    ComplexMatrix h = cov.cast<std::complex<double>>();
    h += std::complex<double>(0.0, 1.0) * omega.cast<std::complex<double>>();
    return min_hermitian_eigenvalue(h);
}

bool is_physical_covariance(const Matrix& cov, double floor) { return physicality_margin(cov) >= floor; }

GaussianState apply_channel(const GaussianState& state, const GaussianChannelSpec& ch) {
    if (ch.T.rows() != state.cov().rows()) {
        throw std::invalid_argument("apply_channel: channel dimension does not match state");
    }
    Vector mean = ch.T * state.mean() + ch.d;
    Matrix cov = symmetrize(ch.T * state.cov() * ch.T.transpose() + ch.N);
    return GaussianState(std::move(mean), std::move(cov));
}

bool validate_channel(const GaussianChannelSpec& ch) {
    const auto n = static_cast<std::size_t>(ch.T.rows() / 2);
    const Matrix omega = symplectic_form(n).matrix();
    const Matrix antisym = omega - ch.T * omega * ch.T.transpose();
    ComplexMatrix h = ch.N.cast<std::complex<double>>();
    h += std::complex<double>(0.0, 1.0) * antisym.cast<std::complex<double>>();
    return min_hermitian_eigenvalue(h) >= kPsdFloor;
}

GaussianState tensor(const GaussianState& a, const GaussianState& b) {
    const Eigen::Index na = a.cov().rows();
    const Eigen::Index nb = b.cov().rows();
    Matrix cov = Matrix::Zero(na + nb, na + nb);
    cov.topLeftCorner(na, na) = a.cov();
    cov.bottomRightCorner(nb, nb) = b.cov();
    Vector mean(na + nb);
    mean << a.mean(), b.mean();
    return GaussianState(std::move(mean), std::move(cov));
}

GaussianState extract_modes(const GaussianState& state, std::span<const std::size_t> indices) {
    if (indices.empty()) throw std::invalid_argument("extract_modes: no modes selected");
    require_distinct_in_range(indices, state.n_modes(), "extract_modes");
    const auto idx = quadrature_indices(indices);
    return GaussianState(select(state.mean(), idx), select(state.cov(), idx, idx));
}

ConditionalState general_dyne_condition(const GaussianState& state,
                                        std::span<const std::size_t> measured,
                                        const Matrix& v_meas,
                                        const Vector& outcome,
                                        const ConditioningOptions& options) {
    if (measured.empty() || measured.size() >= state.n_modes()) {
        throw std::invalid_argument("general_dyne_condition: must measure a proper, non-empty subset");
    }
    require_distinct_in_range(measured, state.n_modes(), "general_dyne_condition");
    const auto m2 = static_cast<Eigen::Index>(2 * measured.size());
    if (v_meas.rows() != m2 || v_meas.cols() != m2 || outcome.size() != m2) {
        throw std::invalid_argument("general_dyne_condition: measurement dimension mismatch");
    }
    require_symmetric(v_meas, "general_dyne_condition");
    const double scale = std::max(1.0, v_meas.cwiseAbs().maxCoeff());
    if (physicality_margin(v_meas) < kPsdFloor * scale) {
        throw std::invalid_argument("general_dyne_condition: measurement seed is not a physical state");
    }

    const auto kept_modes = complement_modes(state.n_modes(), measured);
    const auto ia = quadrature_indices(kept_modes);
    const auto ib = quadrature_indices(measured);
    const Matrix gamma_a = select(state.cov(), ia, ia);
    const Matrix gamma_ab = select(state.cov(), ia, ib);
    const Matrix gamma_b = select(state.cov(), ib, ib);

    const SymmetricInverse normal = invert_symmetric(gamma_b + v_meas, options.allow_pseudo_inverse);
    const Matrix gain = gamma_ab * normal.inverse;
    Matrix cov = symmetrize(gamma_a - gain * gamma_ab.transpose());
    const Vector residual = outcome - select(state.mean(), ib);
    Vector mean = select(state.mean(), ia) + gain * residual;

    const double exponent = -residual.dot(normal.inverse * residual);
    const double density = std::exp(exponent - 0.5 * normal.log_det) /
                           std::pow(std::numbers::pi, static_cast<double>(measured.size()));

    return {GaussianState(std::move(mean), std::move(cov)), density};
}

HomodyneResult homodyne_condition(const GaussianState& state,
                                  std::span<const std::size_t> kept_modes,
                                  std::span<const std::size_t> measured_quadratures) {
    require_distinct_in_range(kept_modes, state.n_modes(), "homodyne_condition");
    for (std::size_t q : measured_quadratures) {
        if (q >= 2 * state.n_modes()) throw std::out_of_range("homodyne_condition: quadrature index");
        if (std::find(kept_modes.begin(), kept_modes.end(), q / 2) != kept_modes.end()) {
            throw std::invalid_argument("homodyne_condition: measured quadrature belongs to a kept mode");
        }
    }
    const auto ia = quadrature_indices(kept_modes);
    std::vector<Eigen::Index> im(measured_quadratures.begin(), measured_quadratures.end());

    const Matrix gamma_a = select(state.cov(), ia, ia);
    const Matrix gamma_am = select(state.cov(), ia, im);
    const Matrix gamma_m = select(state.cov(), im, im);

    const SymmetricInverse normal = invert_symmetric(gamma_m, true);
    Matrix gain = gamma_am * normal.inverse;
    Matrix cov = symmetrize(gamma_a - gain * gamma_am.transpose());
    return {GaussianState(select(state.mean(), ia), std::move(cov)), std::move(gain)};
}

GaussianState homodyne_epr_limit(const GaussianState& state,
                                 std::pair<std::size_t, std::size_t> measured_pair) {
    if (state.n_modes() < 3) throw std::invalid_argument("homodyne_epr_limit: need at least 3 modes");
    const std::size_t pair[2] = {measured_pair.first, measured_pair.second};
    require_distinct_in_range(pair, state.n_modes(), "homodyne_epr_limit");

    const auto kept_modes = complement_modes(state.n_modes(), pair);
    const auto ia = quadrature_indices(kept_modes);
    const auto ib = quadrature_indices(pair);

    // Squeezed directions of the infinitely squeezed seed: q1 - q2 and p1 + p2.
    Matrix e = Matrix::Zero(4, 2);
    const double h = 1.0 / std::numbers::sqrt2;
    e(0, 0) = h;
    e(2, 0) = -h;
    e(1, 1) = h;
    e(3, 1) = h;

    const Matrix gamma_a = select(state.cov(), ia, ia);
    const Matrix projected_ab = select(state.cov(), ia, ib) * e;
    const Matrix projected_b = e.transpose() * select(state.cov(), ib, ib) * e;
    const SymmetricInverse normal = invert_symmetric(projected_b, true);
    Matrix cov = symmetrize(gamma_a - projected_ab * normal.inverse * projected_ab.transpose());
    return GaussianState(select(state.mean(), ia), std::move(cov));
}

std::complex<double> characteristic_at(const GaussianState& state, const Vector& xi) {
    if (xi.size() != state.cov().rows()) throw std::invalid_argument("characteristic_at: length mismatch");
    const Matrix omega = symplectic_form(state.n_modes()).matrix();
    const double quad = xi.dot(omega * state.cov() * omega.transpose() * xi);
    const double phase = (omega * state.mean()).dot(xi);
    return std::exp(std::complex<double>(-0.5 * quad, -phase));
}

double wigner_at(const GaussianState& state, const Vector& x) {
    if (x.size() != state.cov().rows()) throw std::invalid_argument("wigner_at: length mismatch");
    Eigen::LDLT<Matrix> ldlt(state.cov());
    const double det = state.cov().determinant();
    if (ldlt.info() != Eigen::Success || !(det > 0.0)) {
        throw NumericalError("wigner_at: covariance is singular");
    }
    const Vector dx = x - state.mean();
    const double quad = dx.dot(ldlt.solve(dx));
    const double norm = std::pow(2.0 * std::numbers::pi, static_cast<double>(state.n_modes()));
    return std::exp(-0.5 * quad) / (norm * std::sqrt(det));
}

std::vector<double> symplectic_eigenvalues(const Matrix& cov) {
    require_symmetric(cov, "symplectic_eigenvalues");
    if (cov.rows() == 0 || cov.rows() % 2 != 0) {
        throw std::invalid_argument("symplectic_eigenvalues: dimension must be 2n");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrize(cov));
    if (solver.eigenvalues().minCoeff() <= 0.0) {
        throw std::invalid_argument("symplectic_eigenvalues: covariance is not positive definite");
    }
    const Matrix root = solver.operatorSqrt();
    const auto n = static_cast<std::size_t>(cov.rows() / 2);
    const Matrix omega = symplectic_form(n).matrix();
    // i * sqrt(V) Omega sqrt(V) is Hermitian with spectrum {+nu_k, -nu_k}.
    const ComplexMatrix h =
        std::complex<double>(0.0, 1.0) * (root * omega * root).cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> hs(h, Eigen::EigenvaluesOnly);
    std::vector<double> nu;
    nu.reserve(n);
    const Vector& ev = hs.eigenvalues();  // ascending
    for (Eigen::Index k = ev.size() - static_cast<Eigen::Index>(n); k < ev.size(); ++k) nu.push_back(ev(k));
    return nu;
}

Matrix two_mode_symplectic(std::size_t n_modes, std::size_t i, std::size_t j, const Matrix& s4) {
    if (i >= n_modes || j >= n_modes || i == j) {
        throw std::invalid_argument("two_mode_symplectic: invalid mode pair");
    }
    const auto dim = static_cast<Eigen::Index>(2 * n_modes);
    Matrix s = Matrix::Identity(dim, dim);
    const Eigen::Index idx[4] = {static_cast<Eigen::Index>(2 * i), static_cast<Eigen::Index>(2 * i + 1),
                                 static_cast<Eigen::Index>(2 * j), static_cast<Eigen::Index>(2 * j + 1)};
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) s(idx[r], idx[c]) = s4(r, c);
    }
    return s;
}

Matrix beam_splitter_50_50() {
    const double h = 1.0 / std::numbers::sqrt2;
    Matrix s = Matrix::Zero(4, 4);
    s.topLeftCorner(2, 2) = h * Matrix::Identity(2, 2);
    s.topRightCorner(2, 2) = -h * Matrix::Identity(2, 2);
    s.bottomLeftCorner(2, 2) = h * Matrix::Identity(2, 2);
    s.bottomRightCorner(2, 2) = h * Matrix::Identity(2, 2);
    return s;
}

}  // namespace gausslink
