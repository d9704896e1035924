#pragma once

// Built-in reference example: the qutrit basis-change unitary used by the
// four-basis QKD measurement scheme, together with its published coupler
// factorization U = P * F(2,1) * F(3,1) * F(3,2). The 2x2 blocks here use
// their published parametrization, not this library's B(theta, phi) form;
// only the product is checked, with P recovered as the diagonal residue
// U * W^dagger.

#include "tbq/complex_matrix.hpp"

namespace tbq::golden {

UnitaryMatrix qutrit_unitary(); // maps the second-basis states to rails
UnitaryMatrix coupler_32();
UnitaryMatrix coupler_31();
UnitaryMatrix coupler_21();

struct FactorizationReport {
    double unitarity_u = 0.0;   // ||U^dagger U - I||_F, and likewise below
    double unitarity_b32 = 0.0;
    double unitarity_b31 = 0.0;
    double unitarity_b21 = 0.0;
    cvec correction;            // diagonal of P = U * W^dagger
    double correction_offdiag = 0.0;   // off-diagonal leakage of U * W^dagger
    double correction_modulus_err = 0.0; // max | |P_kk| - 1 |
    double residual = 0.0;      // ||U - diag(P) * W||_F
    double product_modulus_err = 0.0;  // max | |W_ij| - 1/sqrt(3) |

    bool pass(double tol = 1e-12) const;
};

FactorizationReport verify_factorization();

} // namespace tbq::golden
