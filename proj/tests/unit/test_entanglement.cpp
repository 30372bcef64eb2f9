#include "gausslink/entanglement.hpp"
#include "gausslink/errors.hpp"
#include "gausslink/selftest.hpp"
#include "gausslink/swapping.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace gl = gausslink;
using gl::Detuning;
using gl::TransducerParams;
using gl::TwoModeStandardForm;

namespace {

// Von Neumann entropy of a single-mode reduced state from its symplectic
// eigenvalue nu (hbar = 2): g((nu - 1) / 2).
double reduced_entropy(const gl::Matrix& cov_2x2) {
    const double nu = std::sqrt(cov_2x2.determinant());
    const double x = (nu - 1.0) / 2.0;
    if (x <= 0.0) return 0.0;
    return (x + 1.0) * std::log2(x + 1.0) - x * std::log2(x);
}

TransducerParams blue(double c_om, double c_em) {
    return TransducerParams::from_cooperativities(c_om, c_em, 1.0, 1.0, 0.0, Detuning::kBlue);
}

}  // namespace

TEST(EntanglementOfFormation, Examples) {
    EXPECT_EQ(gl::entanglement_of_formation({1.0, 1.0, 0.0}), 0.0);
    const TwoModeStandardForm f{17.0, 9.0, 12.0};
    const gl::EofIntermediates im = gl::eof_intermediates(f);
    EXPECT_NEAR(im.r_min, 0.25 * std::log(25.0), 1e-12);
    EXPECT_NEAR(std::pow(std::cosh(im.r_min), 2), 1.8, 1e-12);
    const double expected = 1.8 * std::log2(1.8) - 0.8 * std::log2(0.8);
    EXPECT_NEAR(gl::entanglement_of_formation(f), expected, 1e-10);
    EXPECT_NEAR(gl::entanglement_of_formation(f), 1.7844, 1e-3);
}

TEST(EntanglementOfFormation, TwoModeSqueezedMatchesReducedEntropy) {
    for (double s : {0.2, 0.5, 1.0}) {
        const gl::GaussianState tmsv = gl::GaussianState::two_mode_squeezed(s);
        const gl::Matrix reduced = tmsv.cov().topLeftCorner(2, 2);
        const TwoModeStandardForm f{std::cosh(2.0 * s), std::cosh(2.0 * s), std::sinh(2.0 * s)};
        EXPECT_NEAR(gl::entanglement_of_formation(f), reduced_entropy(reduced), 1e-6) << s;
    }
}

TEST(EntanglementOfFormation, EprLimitIsSingular) {
    EXPECT_THROW(gl::entanglement_of_formation({5.0, 5.0, 5.0}), gl::EprSingularError);
}

TEST(EntanglementOfFormation, PositiveImpliesPptViolation) {
    gl::Rng rng(41);
    int entangled = 0;
    for (int i = 0; i < 200; ++i) {
        const TwoModeStandardForm f = gl::random_physical_form(rng);
        const double ef = gl::entanglement_of_formation(f);
        const double ppt = gl::ppt_min_symplectic_eigenvalue(f);
        EXPECT_GE(ef, 0.0);
        if (ef > 0.0) {
            ++entangled;
            EXPECT_LT(ppt, 1.0 + 1e-9);
        } else {
            EXPECT_GE(ppt, 1.0 - 1e-9);
        }
    }
    EXPECT_GT(entangled, 0);
}

TEST(EntanglementOfFormation, InvariantUnderPhaseFlip) {
    gl::Rng rng(42);
    for (int i = 0; i < 100; ++i) {
        const TwoModeStandardForm f = gl::random_physical_form(rng);
        const TwoModeStandardForm flipped{f.u, f.v, -f.w};
        EXPECT_EQ(gl::entanglement_of_formation(f), gl::entanglement_of_formation(flipped));
    }
}

TEST(EntanglementOfFormation, GeneralAndCollapsedPathsAgree) {
    gl::Rng rng(43);
    for (int i = 0; i < 200; ++i) {
        const TwoModeStandardForm f = gl::random_physical_form(rng);
        const gl::EofIntermediates a = gl::eof_intermediates_general(f);
        const gl::EofIntermediates b = gl::eof_intermediates(f);
        EXPECT_NEAR(a.r_min, b.r_min, 1e-9);
        EXPECT_NEAR(a.beta_minus, b.beta_minus, 1e-9 * std::max(1.0, b.beta_minus));
        EXPECT_NEAR(a.beta_plus, b.beta_plus, 1e-9 * std::max(1.0, b.beta_plus));
        EXPECT_GE(b.beta_minus, 0.0);
        EXPECT_GE(b.r_min, 0.0);
        EXPECT_GE(b.gamma * b.gamma, b.beta_plus * b.beta_minus - 1e-9 * b.gamma * b.gamma);
    }
}

TEST(PptEigenvalue, Examples) {
    EXPECT_NEAR(gl::ppt_min_symplectic_eigenvalue({1.0, 1.0, 0.0}), 1.0, 1e-12);
    const double s = 0.5;
    EXPECT_NEAR(gl::ppt_min_symplectic_eigenvalue({std::cosh(2 * s), std::cosh(2 * s), std::sinh(2 * s)}),
                std::exp(-2 * s), 1e-12);
}

TEST(DuanQuantity, Examples) {
    EXPECT_EQ(gl::duan_quantity({1.0, 1.0, 0.0}), 2.0);
    EXPECT_NEAR(gl::duan_quantity({std::cosh(2.0), std::cosh(2.0), std::sinh(2.0)}), 2.0 * std::exp(-2.0), 1e-12);
    EXPECT_NEAR(gl::duan_quantity({std::cosh(2.0), std::cosh(2.0), std::sinh(2.0)}), 0.2707, 1e-4);
    EXPECT_EQ(gl::duan_quantity({17.0, 9.0, 12.0}), 2.0);
}

TEST(DuanQuantity, BelowOneCertifiesEntanglement) {
    gl::Rng rng(44);
    for (int i = 0; i < 200; ++i) {
        const TwoModeStandardForm f = gl::random_physical_form(rng);
        if (gl::duan_quantity(f) < 1.0) EXPECT_GT(gl::entanglement_of_formation(f), 0.0);
    }
}

TEST(OpticalLoss, UnitTransmissionIsIdentity) {
    gl::Rng rng(45);
    for (int i = 0; i < 50; ++i) {
        const TwoModeStandardForm f = gl::random_physical_form(rng);
        const TwoModeStandardForm g = gl::apply_optical_loss(f, 1.0);
        EXPECT_EQ(g.u, f.u);
        EXPECT_EQ(g.v, f.v);
        EXPECT_EQ(g.w, f.w);
    }
}

TEST(EntanglementRate, NoCouplingGivesZero) {
    EXPECT_EQ(gl::entanglement_rate(blue(0.0, 2.0), 1.0), 0.0);
    EXPECT_EQ(gl::entanglement_rate(blue(0.0, 2.0), 1.0, gl::RateTarget::kSource), 0.0);
}

TEST(EntanglementRate, NoTransmissionGivesZero) {
    EXPECT_EQ(gl::entanglement_rate(blue(1.0, 1.0), 0.0), 0.0);
    EXPECT_EQ(gl::entanglement_rate(blue(1.0, 1.0), 0.0, gl::RateTarget::kSource), 0.0);
}

TEST(EntanglementRate, NonincreasingAsTransmissionDrops) {
    for (gl::RateTarget target : {gl::RateTarget::kSwappedMicrowave, gl::RateTarget::kSource}) {
        double prev = INFINITY;
        for (double tau : {1.0, 0.8, 0.6, 0.4}) {
            const double rate = gl::entanglement_rate(blue(5.0, 10.0), tau, target);
            EXPECT_LE(rate, prev + 1e-9);
            prev = rate;
        }
    }
    EXPECT_GT(gl::entanglement_rate(blue(5.0, 10.0), 0.4, gl::RateTarget::kSource), 0.0);
    EXPECT_EQ(gl::entanglement_rate(blue(5.0, 10.0), 0.4), 0.0);
}

TEST(EntanglementRate, UnstableRejected) {
    EXPECT_THROW(gl::entanglement_rate(blue(12.0, 10.0), 1.0), gl::UnstableParametersError);
}

TEST(EntanglementRate, WorkedPoint) {
    EXPECT_NEAR(gl::entanglement_rate(blue(1.0, 1.0), 1.0), 0.0639, 5e-4);
    EXPECT_NEAR(gl::entanglement_rate(blue(1.0, 1.0), 1.0, gl::RateTarget::kSource), 0.3227, 5e-4);
}
