#pragma once

#include <vector>

#include "periham/moments.hpp"

namespace periham {

// Incremental solutions of J_n x = 1 for the symmetric Toeplitz family
// built from a moment sequence, first row (a_0, a_1/2, a_2/2, ...).
// Produced by a generalized Levinson-Durbin recursion: O(n) memory per
// order, O(max_order^2) time overall.
struct NestedToeplitzSolve {
    std::vector<std::vector<double>> solutions; // x_n, n = 0..max_order
    std::vector<double> sums;                   // S_n = sum(x_n)
    std::vector<double> variances;              // prediction-error variances
    std::vector<double> reflections;            // recursion coefficients, size max_order
    bool well_conditioned = true; // false once a variance dips below 1e-8 * a_0

    int max_order() const { return static_cast<int>(sums.size()) - 1; }

    // S_n - S_{n-1} with S_{-1} = 0.
    double step(int n) const { return n == 0 ? sums[0] : sums[n] - sums[n - 1]; }
};

// Throws breakdown_error (with the failing order) when the prediction-error
// variance drops to 1e-12 * a_0 or below: the family is not positive
// definite at that order, i.e. the periodization is not a sampling measure
// there.
NestedToeplitzSolve solve_nested(const MomentSequence& moments, int max_order);

struct DenseSolve {
    std::vector<double> x;
    double sum = 0.0;
};

// Independent route for tests and self-checks: assembles J_order densely
// and solves by Cholesky factorization.
DenseSolve dense_oracle_solve(const MomentSequence& moments, int order);

} // namespace periham
