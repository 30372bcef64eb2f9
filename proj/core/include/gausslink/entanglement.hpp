#pragma once

#include "gausslink/quadrature.hpp"
#include "gausslink/transducer.hpp"

namespace gausslink {

/// Quantities entering the two-mode entanglement-of-formation formula.
struct EofIntermediates {
    double gamma;
    double beta_plus;
    double beta_minus;
    double r_min;  ///< minimal anti-squeezing; 0 for separable inputs
};

/// Evaluates gamma and beta from determinants of the covariance blocks. Used
/// as the reference path; entanglement_of_formation uses the collapsed
/// beta = (u + v +- 2|w|)^2 form.
EofIntermediates eof_intermediates_general(const TwoModeStandardForm& form);
EofIntermediates eof_intermediates(const TwoModeStandardForm& form);

/// Smallest symplectic eigenvalue of the partially transposed covariance.
/// Below 1 iff the state is entangled.
double ppt_min_symplectic_eigenvalue(const TwoModeStandardForm& form);

/// E_F in ebits. Returns exactly 0 for PPT (separable) forms. Throws
/// EprSingularError when u + v = 2|w| with an entangled input.
double entanglement_of_formation(const TwoModeStandardForm& form);

/// u + v - 2w; values below 1 certify entanglement.
double duan_quantity(const TwoModeStandardForm& form);

/// Which state the frequency-resolved E_F is evaluated on.
enum class RateTarget {
    kSwappedMicrowave,  ///< microwave-microwave state after homodyne swapping
    kSource,            ///< the microwave-optical source itself
};

/// (1/2pi) * integral of E_F(omega) over the blue-detuned output spectrum,
/// after the optical loss replacement with transmissivity tau.
double entanglement_rate(const TransducerParams& p, double tau, RateTarget target = RateTarget::kSwappedMicrowave,
                         const QuadratureSpec& spec = {});

}  // namespace gausslink
