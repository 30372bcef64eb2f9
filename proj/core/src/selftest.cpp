#include "gausslink/selftest.hpp"

#include "gausslink/entanglement.hpp"
#include "gausslink/swapping.hpp"
#include "gausslink/teleportation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace gausslink {

namespace {

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

double log_uniform(Rng& rng, double lo, double hi) { return std::exp(uniform(rng, std::log(lo), std::log(hi))); }

std::string sci(const char* label, double x) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s %.3e", label, x);
    return buf;
}

Matrix random_input(Rng& rng) { return random_physical_covariance(rng, 1); }

SelfTestCase closed_form_suite(Rng& rng) {
    std::vector<TransducerParams> draws;
    for (int i = 0; i < 50; ++i) draws.push_back(random_stable_params(rng, true));
    const ConventionResolution res = resolve_closed_form_convention(draws);
    const bool ok = res.convention.has_value() && res.max_error_zero_noise <= 1e-9;
    return {"closed_form_vs_scattering", ok,
            sci("max |closed - numeric| at n_th=0:", res.max_error_zero_noise) + ", " +
                sci("thermal:", res.max_error_thermal) +
                (res.convention ? "" : " (numeric path authoritative)")};
}

SelfTestCase teleport_suite(Rng& rng) {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const TwoModeStandardForm form = random_physical_form(rng);
        const Matrix v_in = random_input(rng);
        const double kappa = uniform(rng, 0.1, 3.0);
        const GaussianChannelSpec ch = induced_channel_spec(form, kappa);
        const Matrix expected = ch.T * v_in * ch.T.transpose() + ch.N;
        worst = std::max(worst, (teleport_oracle(form.covariance(), v_in, kappa) - expected).cwiseAbs().maxCoeff());
    }
    return {"teleport_oracle_vs_induced_channel", worst <= 1e-8, sci("max discrepancy", worst)};
}

SelfTestCase swap_suite(Rng& rng) {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const TwoModeStandardForm form = random_physical_form(rng, 10.0);
        worst = std::max(worst, (mm_swap_numeric(form, form, 10.0) - mm_swap_closed(form)).cwiseAbs().maxCoeff());
    }
    return {"swap_numeric_r10_vs_closed", worst <= 1e-6, sci("max discrepancy", worst)};
}

SelfTestCase eof_suite(Rng& rng) {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const TwoModeStandardForm form = random_physical_form(rng);
        const EofIntermediates a = eof_intermediates_general(form);
        const EofIntermediates b = eof_intermediates(form);
        worst = std::max(worst, std::abs(a.r_min - b.r_min));
    }
    return {"eof_general_vs_collapsed", worst <= 1e-9, sci("max |r_general - r_collapsed|", worst)};
}

SelfTestCase duan_suite(Rng& rng) {
    int mismatches = 0;
    for (int i = 0; i < 100; ++i) {
        const TwoModeStandardForm form = random_physical_form(rng);
        if (induced_channel(form, 1.0).noise != duan_quantity(form)) ++mismatches;
    }
    return {"unit_gain_noise_is_duan", mismatches == 0, std::to_string(mismatches) + " mismatches"};
}

SelfTestCase physicality_suite(Rng& rng) {
    double margin = INFINITY;
    for (int i = 0; i < 100; ++i) margin = std::min(margin, pipeline_min_margin(rng));
    return {"end_to_end_physicality", margin >= kPsdFloor, sci("min eigenvalue of V + i Omega", margin)};
}

}  // namespace

TwoModeStandardForm random_physical_form(Rng& rng, double max_uv) {
    const double u = uniform(rng, 1.0, max_uv);
    const double v = uniform(rng, 1.0, max_uv);
    const double w_max = std::sqrt((std::min(u, v) - 1.0) * (std::max(u, v) + 1.0));
    return {u, v, uniform(rng, 0.0, 1.0) * w_max * (1.0 - 1e-9)};
}

Matrix random_physical_covariance(Rng& rng, std::size_t n_modes) {
    const auto dim = static_cast<Eigen::Index>(2 * n_modes);
    Matrix s = Matrix::Identity(dim, dim);
    const std::size_t n_ops = 3 * n_modes + 2;
    for (std::size_t k = 0; k < n_ops; ++k) {
        const auto mode = static_cast<Eigen::Index>(std::uniform_int_distribution<std::size_t>(0, n_modes - 1)(rng));
        Matrix op = Matrix::Identity(dim, dim);
        const double theta = uniform(rng, 0.0, 2.0 * std::numbers::pi);
        const double r = uniform(rng, -1.0, 1.0);
        op(2 * mode, 2 * mode) = std::exp(r) * std::cos(theta);
        op(2 * mode, 2 * mode + 1) = std::exp(r) * std::sin(theta);
        op(2 * mode + 1, 2 * mode) = -std::exp(-r) * std::sin(theta);
        op(2 * mode + 1, 2 * mode + 1) = std::exp(-r) * std::cos(theta);
        s = op * s;
        if (n_modes > 1) {
            const auto other = static_cast<Eigen::Index>((mode + 1) % static_cast<Eigen::Index>(n_modes));
            const double phi = uniform(rng, 0.0, std::numbers::pi);
            Matrix bs = Matrix::Identity(dim, dim);
            for (Eigen::Index q = 0; q < 2; ++q) {
                bs(2 * mode + q, 2 * mode + q) = std::cos(phi);
                bs(2 * mode + q, 2 * other + q) = std::sin(phi);
                bs(2 * other + q, 2 * mode + q) = -std::sin(phi);
                bs(2 * other + q, 2 * other + q) = std::cos(phi);
            }
            s = bs * s;
        }
    }
    Vector nu(dim);
    for (std::size_t k = 0; k < n_modes; ++k) {
        const double n = 1.0 + uniform(rng, 0.0, 3.0);
        nu(2 * k) = nu(2 * k + 1) = n;
    }
    const Matrix cov = s * nu.asDiagonal() * s.transpose();
    return 0.5 * (cov + cov.transpose());
}

TransducerParams random_stable_params(Rng& rng, bool thermal) {
    while (true) {
        const double c_em = log_uniform(rng, 0.1, 10.0);
        const double c_om = uniform(rng, 0.0, 0.95) * (1.0 + c_em);
        const TransducerParams p = TransducerParams::from_cooperativities(
            c_om, c_em, uniform(rng, 0.5, 1.0), uniform(rng, 0.5, 1.0), thermal ? uniform(rng, 0.0, 2.0) : 0.0,
            Detuning::kBlue, uniform(rng, 0.5, 2.0), uniform(rng, 0.5, 2.0));
        if (stability_check(p)) return p;
    }
}

double pipeline_min_margin(Rng& rng) {
    double margin = INFINITY;
    auto track = [&margin](const Matrix& cov) { margin = std::min(margin, physicality_margin(cov)); };

    const TransducerParams p1 = random_stable_params(rng, true);
    const TransducerParams p2 = random_stable_params(rng, true);
    const double omega = uniform(rng, -2.0, 2.0);
    track(output_mo_state(p1, omega).cov());
    track(output_mo_state(p2, omega).cov());

    const double tau = uniform(rng, 0.0, 1.0);
    const TwoModeStandardForm src1 = apply_optical_loss(output_mo_covariance(p1, omega), tau);
    const TwoModeStandardForm src2 = apply_optical_loss(output_mo_covariance(p2, omega), tau);
    track(src1.covariance());
    track(src2.covariance());

    const Matrix mm_numeric = mm_swap_numeric(src1, src2, uniform(rng, 0.0, 10.0));
    const Matrix mm_closed = mm_swap_closed(src1);
    track(mm_numeric);
    track(mm_closed);
    track(mm_swap_epr(src1, src2));

    const Matrix v_in = random_input(rng);
    const double kappa = uniform(rng, 0.1, 3.0);
    track(teleport_oracle(src1.covariance(), v_in, kappa));
    track(teleport_oracle(mm_numeric, v_in, kappa));
    track(teleport_oracle(mm_closed, v_in, kappa));
    for (const TwoModeStandardForm& form : {src1, mm_form(src1)}) {
        const GaussianChannelSpec ch = induced_channel_spec(form, kappa);
        track(ch.T * v_in * ch.T.transpose() + ch.N);
    }
    return margin;
}

bool SelfTestReport::all_passed() const {
    return std::all_of(cases.begin(), cases.end(), [](const SelfTestCase& c) { return c.passed; });
}

SelfTestReport run_selftest(std::uint64_t seed) {
    Rng rng(seed);
    SelfTestReport report;
    report.cases.push_back(closed_form_suite(rng));
    report.cases.push_back(teleport_suite(rng));
    report.cases.push_back(swap_suite(rng));
    report.cases.push_back(eof_suite(rng));
    report.cases.push_back(duan_suite(rng));
    report.cases.push_back(physicality_suite(rng));
    return report;
}

}  // namespace gausslink
