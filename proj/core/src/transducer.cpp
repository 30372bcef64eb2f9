#include "gausslink/transducer.hpp"

#include "gausslink/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace gausslink {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

void require(const TransducerParams& p, Detuning d, const char* what) {
    p.validate();
    if (p.detuning != d) {
        throw std::invalid_argument(std::string(what) + (d == Detuning::kRed ? ": requires red detuning"
                                                                            : ": requires blue detuning"));
    }
}

Eigen::Matrix3cd drift_red(const TransducerParams& p) {
    Eigen::Matrix3cd a;
    a << -p.kappa_o() / 2.0, 0.0, -kI * p.g_om,
         0.0, -p.kappa_e() / 2.0, -kI * p.g_em,
         -kI * p.g_om, -kI * p.g_em, -p.kappa_m / 2.0;
    return a;
}

// -i omega I - drift, inverted, sandwiched between the port couplings.
ScatteringMatrix scatter(const Eigen::Matrix3cd& drift, const Eigen::Matrix<double, 3, 5>& ports, double omega) {
    const Eigen::Matrix3cd resolvent = (-kI * omega * Eigen::Matrix3cd::Identity() - drift).inverse();
    const Eigen::Matrix<cd, 3, 5> b = ports.cast<cd>();
    return b.transpose() * resolvent * b - ScatteringMatrix::Identity();
}

// Port layout of the blue configuration: optical entries are creation operators.
constexpr std::array<bool, 5> kBlueConjugated = {true, true, false, false, false};

QuadratureScattering input_covariance_blue(double n_th) {
    QuadratureScattering v = QuadratureScattering::Identity();
    const double thermal = 2.0 * n_th + 1.0;
    for (int port : {2, 4}) {
        v(2 * port, 2 * port) = thermal;
        v(2 * port + 1, 2 * port + 1) = thermal;
    }
    return v;
}

}  // namespace

void TransducerParams::validate() const {
    const double rates[] = {g_om, g_em, kappa_o_c, kappa_o_i, kappa_e_c, kappa_e_i, kappa_m, n_th};
    for (double r : rates) {
        if (!(r >= 0.0) || !std::isfinite(r)) {
            throw std::invalid_argument("TransducerParams: rates and n_th must be finite and non-negative");
        }
    }
    if (!(kappa_o() > 0.0) || !(kappa_e() > 0.0) || !(kappa_m > 0.0)) {
        throw std::invalid_argument("TransducerParams: total linewidths must be positive");
    }
}

TransducerParams TransducerParams::from_cooperativities(double c_om, double c_em, double zeta_o, double zeta_e,
                                                        double n_th, Detuning detuning, double kappa_o,
                                                        double kappa_e, double kappa_m) {
    if (c_om < 0.0 || c_em < 0.0) throw std::invalid_argument("from_cooperativities: negative cooperativity");
    if (zeta_o < 0.0 || zeta_o > 1.0 || zeta_e < 0.0 || zeta_e > 1.0) {
        throw std::invalid_argument("from_cooperativities: extraction ratios must lie in [0, 1]");
    }
    TransducerParams p;
    p.g_om = std::sqrt(c_om * kappa_o * kappa_m / 4.0);
    p.g_em = std::sqrt(c_em * kappa_e * kappa_m / 4.0);
    p.kappa_o_c = zeta_o * kappa_o;
    p.kappa_o_i = (1.0 - zeta_o) * kappa_o;
    p.kappa_e_c = zeta_e * kappa_e;
    p.kappa_e_i = (1.0 - zeta_e) * kappa_e;
    p.kappa_m = kappa_m;
    p.n_th = n_th;
    p.detuning = detuning;
    p.validate();
    return p;
}

Matrix TwoModeStandardForm::covariance() const {
    Matrix cov = Matrix::Zero(4, 4);
    cov(0, 0) = cov(1, 1) = u;
    cov(2, 2) = cov(3, 3) = v;
    cov(0, 2) = cov(2, 0) = w;
    cov(1, 3) = cov(3, 1) = -w;
    return cov;
}

bool TwoModeStandardForm::is_physical() const {
    return u >= 1.0 + kPsdFloor && v >= 1.0 + kPsdFloor && is_physical_covariance(covariance());
}

Cooperativities cooperativities(const TransducerParams& p) {
    p.validate();
    return {4.0 * p.g_om * p.g_om / (p.kappa_o() * p.kappa_m),
            4.0 * p.g_em * p.g_em / (p.kappa_e() * p.kappa_m)};
}

ScatteringMatrix scattering_red(const TransducerParams& p, double omega) {
    require(p, Detuning::kRed, "scattering_red");
    Eigen::Matrix<double, 3, 5> b = Eigen::Matrix<double, 3, 5>::Zero();
    b(0, 0) = std::sqrt(p.kappa_o_c);
    b(0, 1) = std::sqrt(p.kappa_o_i);
    b(1, 2) = std::sqrt(p.kappa_e_c);
    b(1, 3) = std::sqrt(p.kappa_e_i);
    b(2, 4) = std::sqrt(p.kappa_m);
    return scatter(drift_red(p), b, omega);
}

double dqt_efficiency(const TransducerParams& p) {
    const auto [c_om, c_em] = cooperativities(p);
    const double denom = 1.0 + c_om + c_em;
    return 4.0 * c_om * c_em / (denom * denom) * p.zeta_o() * p.zeta_e();
}

double dqt_efficiency_bandwidth(const TransducerParams& p, double omega) {
    const auto [c_om, c_em] = cooperativities(p);
    const cd alpha = 1.0 - 2.0 * kI * omega / p.kappa_e();
    const cd beta = 1.0 - 2.0 * kI * omega / p.kappa_o();
    const cd gamma = 1.0 - 2.0 * kI * omega / p.kappa_m;
    const double denom = std::norm(c_om * alpha + c_em * beta + alpha * beta * gamma);
    return 4.0 * c_om * c_em * p.zeta_o() * p.zeta_e() / denom;
}

DqtChannel dqt_channel(const TransducerParams& p, double omega) {
    require(p, Detuning::kRed, "dqt_channel");
    const double eta = omega == 0.0 ? dqt_efficiency(p) : dqt_efficiency_bandwidth(p, omega);
    if (eta >= 1.0) throw NumericalError("dqt_channel: conversion efficiency >= 1");
    if (p.n_th == 0.0) return {eta, 0.0};
    const ScatteringMatrix s = scattering_red(p, omega);
    const double leak = std::norm(s(0, 3)) + std::norm(s(0, 4));
    return {eta, leak * p.n_th / (1.0 - eta)};
}

Eigen::Matrix3cd drift_blue(const TransducerParams& p) {
    Eigen::Matrix3cd m;
    m << -p.kappa_o() / 2.0, -kI * p.g_om, 0.0,
         kI * p.g_om, -p.kappa_m / 2.0, kI * p.g_em,
         0.0, kI * p.g_em, -p.kappa_e() / 2.0;
    return m;
}

ScatteringMatrix scattering_blue(const TransducerParams& p, double omega) {
    require(p, Detuning::kBlue, "scattering_blue");
    if (!stability_check(p)) throw UnstableParametersError("scattering_blue: parameters are unstable");
    Eigen::Matrix<double, 3, 5> n = Eigen::Matrix<double, 3, 5>::Zero();
    n(0, 0) = std::sqrt(p.kappa_o_c);
    n(0, 1) = std::sqrt(p.kappa_o_i);
    n(1, 2) = std::sqrt(p.kappa_m);
    n(2, 3) = std::sqrt(p.kappa_e_c);
    n(2, 4) = std::sqrt(p.kappa_e_i);
    return scatter(drift_blue(p), n, omega);
}

QuadratureScattering quadrature_scattering(const ScatteringMatrix& s_blue) {
    // Mode-space map on (x_k, x_k^dag) pairs, then (q, p) = L (a, a^dag) per port
    // with L = [[1, 1], [-i, i]]. For conjugated ports a = x^dag, so L picks up a swap.
    using Mat10c = Eigen::Matrix<cd, 10, 10>;
    Mat10c mode = Mat10c::Zero();
    for (int j = 0; j < 5; ++j) {
        for (int k = 0; k < 5; ++k) {
            mode(2 * j, 2 * k) = s_blue(j, k);
            mode(2 * j + 1, 2 * k + 1) = std::conj(s_blue(j, k));
        }
    }
    Mat10c to_quad = Mat10c::Zero();
    for (int k = 0; k < 5; ++k) {
        const int a = kBlueConjugated[k] ? 1 : 0;  // column holding a
        to_quad(2 * k, 2 * k + a) = 1.0;
        to_quad(2 * k, 2 * k + 1 - a) = 1.0;
        to_quad(2 * k + 1, 2 * k + a) = -kI;
        to_quad(2 * k + 1, 2 * k + 1 - a) = kI;
    }
    const Mat10c real_map = to_quad * mode * to_quad.inverse();
    if (real_map.imag().cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, real_map.real().cwiseAbs().maxCoeff())) {
        throw NumericalError("quadrature_scattering: map is not real");
    }
    return real_map.real();
}

bool stability_check(const TransducerParams& p) {
    p.validate();
    Eigen::ComplexEigenSolver<Eigen::Matrix3cd> solver(drift_blue(p), false);
    return solver.eigenvalues().real().maxCoeff() < -1e-9;
}

GaussianState output_mo_state(const TransducerParams& p, double omega) {
    const QuadratureScattering s = quadrature_scattering(scattering_blue(p, omega));
    const QuadratureScattering v = s * input_covariance_blue(p.n_th) * s.transpose();
    // Optical coupling output is port 0, microwave coupling output is port 3.
    const int idx[4] = {0, 1, 6, 7};
    Matrix cov(4, 4);
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) cov(r, c) = v(idx[r], idx[c]);
    }
    cov = 0.5 * (cov + cov.transpose());
    return GaussianState(cov);
}

TwoModeStandardForm output_mo_covariance(const TransducerParams& p, double omega) {
    const Matrix cov = output_mo_state(p, omega).cov();
    const double det_c = cov(0, 2) * cov(1, 3) - cov(0, 3) * cov(1, 2);
    return {0.5 * (cov(0, 0) + cov(1, 1)), 0.5 * (cov(2, 2) + cov(3, 3)), std::sqrt(std::abs(det_c))};
}

TwoModeStandardForm output_mo_closed_form(const TransducerParams& p, ClosedFormConvention convention) {
    require(p, Detuning::kBlue, "output_mo_closed_form");
    if (!stability_check(p)) throw UnstableParametersError("output_mo_closed_form: parameters are unstable");
    const auto [c_om, c_em] = cooperativities(p);
    const double zo = p.zeta_o();
    const double ze = p.zeta_e();
    const bool doubled = convention == ClosedFormConvention::kScaledDouble ||
                         convention == ClosedFormConvention::kCorrectedDouble;
    const bool scaled = convention == ClosedFormConvention::kScaledSingle ||
                         convention == ClosedFormConvention::kScaledDouble;
    const double n = doubled ? 2.0 * p.n_th : p.n_th;
    const double d = (1.0 - c_om + c_em) * (1.0 - c_om + c_em);

    TwoModeStandardForm f;
    f.u = 1.0 + 8.0 * c_om * (1.0 + n + c_em * (1.0 + n - n * ze)) * zo / d;
    const double v_bracket = c_em * (c_om + n) - (c_om - 1.0) * (c_om - 1.0) * (ze - 1.0) * n;
    f.v = 1.0 + 8.0 * v_bracket * ze * (scaled ? c_om : 1.0) / d;
    f.w = 4.0 * (1.0 + c_em + c_om + 2.0 * n * c_om * (1.0 - ze) + 2.0 * n * ze) *
          std::sqrt(c_om * c_em * ze * zo) / d;
    return f;
}

ConventionResolution resolve_closed_form_convention(std::span<const TransducerParams> draws, double tolerance) {
    auto max_error = [&](ClosedFormConvention conv, bool zero_noise) {
        double worst = 0.0;
        for (TransducerParams p : draws) {
            if (zero_noise) p.n_th = 0.0;
            const TwoModeStandardForm a = output_mo_closed_form(p, conv);
            const TwoModeStandardForm b = output_mo_covariance(p, 0.0);
            worst = std::max({worst, std::abs(a.u - b.u), std::abs(a.v - b.v), std::abs(a.w - b.w)});
        }
        return worst;
    };

    ConventionResolution best{std::nullopt, INFINITY, INFINITY};
    for (ClosedFormConvention conv : {ClosedFormConvention::kScaledSingle, ClosedFormConvention::kScaledDouble,
                                      ClosedFormConvention::kCorrectedSingle, ClosedFormConvention::kCorrectedDouble}) {
        const double e0 = max_error(conv, true);
        const double et = max_error(conv, false);
        if (e0 <= tolerance && et <= tolerance) return {conv, e0, et};
        if (et < best.max_error_thermal) best = {std::nullopt, e0, et};
    }
    return best;
}

}  // namespace gausslink
