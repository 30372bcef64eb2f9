#pragma once

// Randomized oracle-equivalence suites behind the `selftest` subcommand, and
// the random draws they share with the test binaries.

#include "gausslink/gaussian_state.hpp"
#include "gausslink/transducer.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace gausslink {

using Rng = std::mt19937_64;

/// Physical (u, v, w) with u, v in [1, max_uv] and 0 <= w below the
/// physicality limit sqrt((min(u,v) - 1)(max(u,v) + 1)).
TwoModeStandardForm random_physical_form(Rng& rng, double max_uv = 20.0);

/// S diag(nu) S^T with a random symplectic S built from squeezers, phase
/// rotations and beam splitters.
Matrix random_physical_covariance(Rng& rng, std::size_t n_modes);

/// Blue-detuned parameters that pass stability_check. Linewidths are drawn in
/// [0.5, 2], extraction ratios in [0.5, 1].
TransducerParams random_stable_params(Rng& rng, bool thermal);

/// Runs source -> optical loss -> swap -> teleport on random draws and returns
/// the smallest eigenvalue of V + i Omega seen across every covariance produced.
double pipeline_min_margin(Rng& rng);

struct SelfTestCase {
    std::string name;
    bool passed;
    std::string detail;
};

struct SelfTestReport {
    std::vector<SelfTestCase> cases;
    bool all_passed() const;
};

SelfTestReport run_selftest(std::uint64_t seed);

}  // namespace gausslink
