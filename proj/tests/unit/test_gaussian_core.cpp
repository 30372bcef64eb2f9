#include "gausslink/errors.hpp"
#include "gausslink/gaussian_state.hpp"
#include "gausslink/selftest.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace gl = gausslink;
using gl::Matrix;
using gl::Vector;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

// Random CP channel on n modes: per-mode thermal loss or amplification,
// followed by a symplectic mixing unitary.
gl::GaussianChannelSpec random_dilated_channel(gl::Rng& rng, std::size_t n) {
    const auto dim = static_cast<Eigen::Index>(2 * n);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix t = Matrix::Identity(dim, dim);
    Matrix noise = Matrix::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; k += 2) {
        const double eta = std::exp(1.5 * u(rng));
        const double n_env = 0.5 * (u(rng) + 1.0);
        t(k, k) = t(k + 1, k + 1) = std::sqrt(eta);
        noise(k, k) = noise(k + 1, k + 1) = std::abs(1.0 - eta) * (2.0 * n_env + 1.0);
    }
    Matrix mix = Matrix::Identity(dim, dim);
    for (Eigen::Index k = 0; k < dim; k += 2) {
        const double phi = u(rng) * std::numbers::pi;
        const double r = 0.5 * u(rng);
        Matrix local = Matrix::Identity(dim, dim);
        local(k, k) = std::exp(r) * std::cos(phi);
        local(k, k + 1) = std::exp(r) * std::sin(phi);
        local(k + 1, k) = -std::exp(-r) * std::sin(phi);
        local(k + 1, k + 1) = std::exp(-r) * std::cos(phi);
        mix = local * mix;
    }
    if (n > 1) mix = gl::two_mode_symplectic(n, 0, n - 1, gl::beam_splitter_50_50()) * mix;
    return {mix * t, mix * noise * mix.transpose()};
}

}  // namespace

TEST(SymplecticForm, SingleModeBlock) {
    Matrix expected(2, 2);
    expected << 0, 1, -1, 0;
    EXPECT_EQ(gl::symplectic_form(1).matrix(), expected);
}

TEST(SymplecticForm, TwoModesIsDirectSum) {
    const Matrix omega = gl::symplectic_form(2).matrix();
    EXPECT_EQ(omega.topLeftCorner(2, 2), gl::symplectic_form(1).matrix());
    EXPECT_EQ(omega.bottomRightCorner(2, 2), gl::symplectic_form(1).matrix());
    EXPECT_EQ(omega.topRightCorner(2, 2), Matrix::Zero(2, 2));
}

TEST(SymplecticForm, OrthogonalAndSquaresToMinusIdentity) {
    for (std::size_t n = 1; n <= 5; ++n) {
        const Matrix omega = gl::symplectic_form(n).matrix();
        const auto dim = static_cast<Eigen::Index>(2 * n);
        EXPECT_EQ(omega * omega.transpose(), Matrix::Identity(dim, dim));
        EXPECT_EQ(omega * omega, -Matrix::Identity(dim, dim));
        EXPECT_EQ(omega.transpose(), -omega);
    }
}

TEST(SymplecticForm, ZeroModesRejected) { EXPECT_THROW(gl::symplectic_form(0), std::invalid_argument); }

TEST(GaussianState, VacuumIsIdentity) {
    const gl::GaussianState vac = gl::GaussianState::vacuum(3);
    EXPECT_EQ(vac.cov(), Matrix::Identity(6, 6));
    EXPECT_EQ(vac.mean(), Vector::Zero(6));
    EXPECT_TRUE(vac.is_physical());
}

TEST(GaussianState, RejectsAsymmetricCovariance) {
    Matrix cov = Matrix::Identity(2, 2);
    cov(0, 1) = 0.1;
    EXPECT_THROW(gl::GaussianState{cov}, std::invalid_argument);
}

TEST(GaussianState, SubVacuumIsUnphysical) {
    EXPECT_FALSE(gl::GaussianState(0.5 * Matrix::Identity(2, 2)).is_physical());
    EXPECT_TRUE(gl::GaussianState::thermal(0.3).is_physical());
}

TEST(ApplyChannel, IdentityKeepsVacuum) {
    const gl::GaussianState out = gl::apply_channel(gl::GaussianState::vacuum(1), gl::GaussianChannelSpec::identity(1));
    EXPECT_EQ(out.cov(), Matrix::Identity(2, 2));
}

TEST(ApplyChannel, PureLossFixesVacuum) {
    const Matrix id = Matrix::Identity(2, 2);
    const gl::GaussianState out =
        gl::apply_channel(gl::GaussianState::vacuum(1), {std::sqrt(0.5) * id, 0.5 * id});
    EXPECT_NEAR(max_abs(out.cov() - id), 0.0, 1e-15);
}

TEST(ApplyChannel, ThermalLossFixesMatchingThermalState) {
    const Matrix id = Matrix::Identity(2, 2);
    const gl::GaussianState out =
        gl::apply_channel(gl::GaussianState(3.0 * id), {std::sqrt(0.5) * id, 0.5 * 3.0 * id});
    EXPECT_NEAR(max_abs(out.cov() - 3.0 * id), 0.0, 1e-14);
}

TEST(ApplyChannel, MeanAndDisplacement) {
    Vector mean(2);
    mean << 1.0, -2.0;
    Vector d(2);
    d << 0.5, 0.25;
    const Matrix id = Matrix::Identity(2, 2);
    const gl::GaussianState out = gl::apply_channel(gl::GaussianState(mean, id), {2.0 * id, id, d});
    EXPECT_DOUBLE_EQ(out.mean()(0), 2.5);
    EXPECT_DOUBLE_EQ(out.mean()(1), -3.75);
}

TEST(ApplyChannel, DimensionMismatchRejected) {
    EXPECT_THROW(gl::apply_channel(gl::GaussianState::vacuum(2), gl::GaussianChannelSpec::identity(1)),
                 std::invalid_argument);
}

TEST(ValidateChannel, Examples) {
    const Matrix id = Matrix::Identity(2, 2);
    EXPECT_TRUE(gl::validate_channel({id, Matrix::Zero(2, 2)}));
    EXPECT_FALSE(gl::validate_channel({std::sqrt(0.5) * id, Matrix::Zero(2, 2)}));
    EXPECT_TRUE(gl::validate_channel({std::sqrt(0.5) * id, 0.5 * id}));
}

TEST(ApplyChannel, PhysicalityPreservedOnRandomDraws) {
    gl::Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 1 + static_cast<std::size_t>(i % 3);
        const gl::GaussianChannelSpec ch = random_dilated_channel(rng, n);
        ASSERT_TRUE(gl::validate_channel(ch));
        const gl::GaussianState in(gl::random_physical_covariance(rng, n));
        ASSERT_TRUE(in.is_physical());
        EXPECT_TRUE(gl::apply_channel(in, ch).is_physical()) << "draw " << i;
    }
}

TEST(ApplyChannel, SymplecticChannelPreservesSymplecticEigenvalues) {
    gl::Rng rng(12);
    for (int i = 0; i < 20; ++i) {
        const Matrix cov = gl::random_physical_covariance(rng, 2);
        Matrix s = gl::two_mode_symplectic(2, 0, 1, gl::beam_splitter_50_50());
        Matrix sq = Matrix::Identity(4, 4);
        sq(0, 0) = 2.0;
        sq(1, 1) = 0.5;
        s = sq * s;
        const auto before = gl::symplectic_eigenvalues(cov);
        const auto after =
            gl::symplectic_eigenvalues(gl::apply_channel(gl::GaussianState(cov), {s, Matrix::Zero(4, 4)}).cov());
        for (std::size_t k = 0; k < before.size(); ++k) EXPECT_NEAR(before[k], after[k], 1e-9);
    }
}

TEST(Tensor, BlockDiagonal) {
    const Matrix id = Matrix::Identity(2, 2);
    const gl::GaussianState t = gl::tensor(gl::GaussianState(2.0 * id), gl::GaussianState(5.0 * id));
    Vector diag(4);
    diag << 2, 2, 5, 5;
    EXPECT_EQ(t.cov(), Matrix(diag.asDiagonal()));
    EXPECT_EQ(gl::tensor(gl::GaussianState::vacuum(1), gl::GaussianState::vacuum(1)).cov(), Matrix::Identity(4, 4));
}

TEST(ExtractModes, RoundTripAndReduction) {
    gl::Rng rng(3);
    const gl::GaussianState a(gl::random_physical_covariance(rng, 1));
    const gl::GaussianState b = gl::GaussianState::thermal(2.0);
    const gl::GaussianState ab = gl::tensor(a, b);
    const std::size_t first[] = {0};
    EXPECT_EQ(gl::extract_modes(ab, first).cov(), a.cov());
    const std::size_t both[] = {0, 1};
    EXPECT_EQ(gl::extract_modes(ab, both).cov(), ab.cov());

    const std::size_t vac_part[] = {0};
    EXPECT_EQ(gl::extract_modes(gl::tensor(gl::GaussianState::vacuum(1), b), vac_part).cov(), Matrix::Identity(2, 2));
}

TEST(ExtractModes, TmsvMarginalIsThermal) {
    const double r = 0.7;
    const std::size_t second[] = {1};
    const gl::GaussianState marginal = gl::extract_modes(gl::GaussianState::two_mode_squeezed(r), second);
    EXPECT_NEAR(max_abs(marginal.cov() - std::cosh(2 * r) * Matrix::Identity(2, 2)), 0.0, 1e-15);
    EXPECT_TRUE(marginal.is_physical());
}

TEST(ExtractModes, OutOfRangeRejected) {
    const std::size_t bad[] = {2};
    EXPECT_THROW(gl::extract_modes(gl::GaussianState::vacuum(2), bad), std::out_of_range);
}

TEST(GeneralDyne, ZeroOutcomeGivesZeroMean) {
    gl::Rng rng(5);
    const gl::GaussianState s(gl::random_physical_covariance(rng, 3));
    const std::size_t measured[] = {1};
    const auto res = gl::general_dyne_condition(s, measured, Matrix::Identity(2, 2), Vector::Zero(2));
    EXPECT_EQ(res.state.mean(), Vector::Zero(4));
}

TEST(GeneralDyne, CovarianceIndependentOfOutcome) {
    gl::Rng rng(6);
    std::normal_distribution<double> normal(0.0, 2.0);
    const gl::GaussianState s(gl::random_physical_covariance(rng, 3));
    const std::size_t measured[] = {0, 2};
    const Matrix seed = gl::GaussianState::two_mode_squeezed(0.8).cov();
    const Matrix ref = gl::general_dyne_condition(s, measured, seed, Vector::Zero(4)).state.cov();
    for (int i = 0; i < 10; ++i) {
        Vector outcome(4);
        for (int k = 0; k < 4; ++k) outcome(k) = normal(rng);
        const auto res = gl::general_dyne_condition(s, measured, seed, outcome);
        EXPECT_LE(max_abs(res.state.cov() - ref), 1e-12);
    }
}

TEST(GeneralDyne, HeterodyneOnTmsvByHand) {
    const double r = 0.6;
    const double c = std::cosh(2 * r);
    const double sh = std::sinh(2 * r);
    const std::size_t measured[] = {1};
    const auto res = gl::general_dyne_condition(gl::GaussianState::two_mode_squeezed(r), measured,
                                                Matrix::Identity(2, 2), Vector::Zero(2));
    const double expected = c - sh * sh / (c + 1.0);
    EXPECT_NEAR(max_abs(res.state.cov() - expected * Matrix::Identity(2, 2)), 0.0, 1e-12);
}

TEST(GeneralDyne, DensityIsNormalisedGaussianOfHalfCovariance) {
    // Under the library convention the density integrates to 1 over the
    // outcome plane; check on a single measured mode.
    const std::size_t measured[] = {1};
    const gl::GaussianState s = gl::GaussianState::two_mode_squeezed(0.3);
    double total = 0.0;
    const double h = 0.05;
    for (double x = -8; x <= 8; x += h) {
        for (double y = -8; y <= 8; y += h) {
            Vector o(2);
            o << x, y;
            total += gl::general_dyne_condition(s, measured, Matrix::Identity(2, 2), o).probability_density;
        }
    }
    EXPECT_NEAR(total * h * h, 1.0, 1e-3);
}

TEST(GeneralDyne, UnphysicalSeedRejected) {
    const std::size_t measured[] = {1};
    EXPECT_THROW(gl::general_dyne_condition(gl::GaussianState::vacuum(2), measured, 0.2 * Matrix::Identity(2, 2),
                                            Vector::Zero(2)),
                 std::invalid_argument);
}

TEST(GeneralDyne, SingularNormalMatrixWithoutFallbackThrows) {
    // Gamma_B + V = 0 in one direction: an infinitely squeezed measured mode
    // against a zero seed is impossible physically, so use a classical object.
    Matrix cov = Matrix::Identity(4, 4);
    cov(2, 2) = 1e-14;
    cov(3, 3) = 1e14;
    const gl::GaussianState s(cov);
    const std::size_t measured[] = {1};
    Matrix seed = Matrix::Zero(2, 2);
    seed(0, 0) = 1e-14;
    seed(1, 1) = 1e14;
    EXPECT_THROW(gl::general_dyne_condition(s, measured, seed, Vector::Zero(2), {false}), gl::NumericalError);
    EXPECT_NO_THROW(gl::general_dyne_condition(s, measured, seed, Vector::Zero(2), {true}));
}

namespace {

gl::GaussianState two_sources(const Matrix& v1, const Matrix& v2) {
    return gl::tensor(gl::GaussianState(v1), gl::GaussianState(v2));
}

Matrix standard_form(double u, double v, double w) {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = m(1, 1) = u;
    m(2, 2) = m(3, 3) = v;
    m(0, 2) = m(2, 0) = w;
    m(1, 3) = m(3, 1) = -w;
    return m;
}

}  // namespace

TEST(HomodyneEprLimit, WorkedSwapValue) {
    const Matrix v = standard_form(17, 9, 12);
    const Matrix out = gl::homodyne_epr_limit(two_sources(v, v), {0, 2}).cov();
    EXPECT_NEAR(out(0, 0), 9.0 - 144.0 / 34.0, 1e-12);
    EXPECT_NEAR(out(0, 2), 144.0 / 34.0, 1e-12);
    EXPECT_NEAR(out(1, 3), -144.0 / 34.0, 1e-12);
}

TEST(HomodyneEprLimit, MatchesLargeSqueezingAndConvergesMonotonically) {
    gl::Rng rng(8);
    for (int trial = 0; trial < 5; ++trial) {
        const gl::TwoModeStandardForm f1 = gl::random_physical_form(rng, 10.0);
        const gl::TwoModeStandardForm f2 = gl::random_physical_form(rng, 10.0);
        const gl::GaussianState joint = two_sources(f1.covariance(), f2.covariance());
        const Matrix limit = gl::homodyne_epr_limit(joint, {0, 2}).cov();
        const std::size_t measured[] = {0, 2};
        double previous = INFINITY;
        for (double r : {2.0, 4.0, 6.0, 8.0, 10.0}) {
            const Matrix finite =
                gl::general_dyne_condition(joint, measured, gl::GaussianState::two_mode_squeezed(r).cov(),
                                           Vector::Zero(4))
                    .state.cov();
            const double err = max_abs(finite - limit);
            EXPECT_LT(err, previous) << "r = " << r;
            previous = err;
        }
        EXPECT_LE(previous, 1e-6);
    }
}

TEST(HomodyneEprLimit, ProductInputGivesZeroCrossBlock) {
    const Matrix v = standard_form(5, 3, 0);
    const Matrix out = gl::homodyne_epr_limit(two_sources(v, v), {0, 2}).cov();
    EXPECT_NEAR(max_abs(out.topRightCorner(2, 2)), 0.0, 1e-14);
}

TEST(HomodyneEprLimit, NeedsThreeModes) {
    EXPECT_THROW(gl::homodyne_epr_limit(gl::GaussianState::vacuum(2), {0, 1}), std::invalid_argument);
}

TEST(Phasespace, CharacteristicNormalisedAndVacuumWignerPeak) {
    gl::Rng rng(9);
    const gl::GaussianState s(gl::random_physical_covariance(rng, 2));
    EXPECT_NEAR(std::abs(gl::characteristic_at(s, Vector::Zero(4)) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(gl::wigner_at(gl::GaussianState::vacuum(1), Vector::Zero(2)), 1.0 / (2.0 * std::numbers::pi), 1e-15);
}

TEST(Phasespace, WignerIntegratesToOne) {
    gl::Rng rng(10);
    Vector mean(2);
    mean << 0.4, -0.3;
    const gl::GaussianState s(mean, gl::random_physical_covariance(rng, 1));
    const double sigma = std::sqrt(s.cov().diagonal().maxCoeff());
    const double h = sigma / 40.0;
    double total = 0.0;
    for (double x = -6 * sigma; x <= 6 * sigma; x += h) {
        for (double y = -6 * sigma; y <= 6 * sigma; y += h) {
            Vector p(2);
            p << mean(0) + x, mean(1) + y;
            total += gl::wigner_at(s, p);
        }
    }
    EXPECT_NEAR(total * h * h, 1.0, 1e-3);
}

TEST(Phasespace, WignerRejectsSingularCovariance) {
    Matrix cov = Matrix::Zero(2, 2);
    cov(0, 0) = 1.0;
    EXPECT_THROW(gl::wigner_at(gl::GaussianState(cov), Vector::Zero(2)), gl::NumericalError);
}

TEST(Phasespace, FourierConsistencySingleMode) {
    // W(x) = (2 pi)^-2 * integral chi(xi) exp(-i x^T Omega xi) d^2 xi.
    gl::Rng rng(13);
    std::uniform_real_distribution<double> coord(-1.5, 1.5);
    Vector mean(2);
    mean << 0.3, 0.2;
    const gl::GaussianState s(mean, gl::random_physical_covariance(rng, 1));
    const Matrix omega = gl::symplectic_form(1).matrix();
    const double lim = 12.0;
    const double h = 0.04;
    for (int trial = 0; trial < 5; ++trial) {
        Vector x(2);
        x << coord(rng), coord(rng);
        std::complex<double> acc = 0.0;
        for (double a = -lim; a <= lim; a += h) {
            for (double b = -lim; b <= lim; b += h) {
                Vector xi(2);
                xi << a, b;
                const double phase = -x.dot(omega * xi);
                acc += gl::characteristic_at(s, xi) * std::polar(1.0, phase);
            }
        }
        const double w = (acc * h * h).real() / std::pow(2.0 * std::numbers::pi, 2);
        EXPECT_NEAR(w, gl::wigner_at(s, x), 1e-4);
    }
}

TEST(SymplecticEigenvalues, Examples) {
    for (double nu : gl::symplectic_eigenvalues(Matrix::Identity(4, 4))) EXPECT_NEAR(nu, 1.0, 1e-12);
    const auto thermal = gl::symplectic_eigenvalues(gl::GaussianState::thermal(1.0).cov());
    ASSERT_EQ(thermal.size(), 1u);
    EXPECT_NEAR(thermal[0], 3.0, 1e-12);
    for (double nu : gl::symplectic_eigenvalues(gl::GaussianState::two_mode_squeezed(1.1).cov())) {
        EXPECT_NEAR(nu, 1.0, 1e-9);
    }
}

TEST(SymplecticEigenvalues, NonSymmetricRejected) {
    Matrix m = Matrix::Identity(2, 2);
    m(1, 0) = 0.5;
    EXPECT_THROW(gl::symplectic_eigenvalues(m), std::invalid_argument);
}
