#pragma once

#include <vector>

#include "periham/moments.hpp"
#include "periham/toeplitz.hpp"

namespace periham {

// Orthonormal polynomials on the unit circle for the periodized measure,
// computed by the Szego recursion on the moments c_0 = a_0, c_k = a_k / 2.
// Even measures keep every quantity real; the recursion never forms a
// complex number and asserts |reflection| < 1 at each order instead.
struct SzegoData {
    std::vector<double> reflection;    // Verblunsky coefficients, size max_order
    std::vector<double> monic_norm_sq; // ||Phi_n||^2, n = 0..max_order
    std::vector<double> monic_at_one;  // Phi_n(1)
    std::vector<double> phi1_sq;       // phi_n(1)^2 = Phi_n(1)^2 / ||Phi_n||^2

    int max_order() const { return static_cast<int>(phi1_sq.size()) - 1; }
};

SzegoData szego_from_moments(const MomentSequence& moments, int max_order);

// Cross-check of the two step-value routes: phi_n(1)^2 against
// S_n - S_{n-1} from the nested Toeplitz solve, order by order.
struct StepIdentityReport {
    std::vector<double> rel_dev;
    double max_rel_dev = 0.0;
};

StepIdentityReport verify_step_identity(const SzegoData& szego,
                                        const NestedToeplitzSolve& nested);

} // namespace periham
