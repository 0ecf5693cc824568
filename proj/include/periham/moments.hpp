#pragma once

#include <vector>

#include "periham/measure.hpp"

namespace periham {

enum class Provenance { ClosedForm, Quadrature };

const char* to_string(Provenance p);

// Trigonometric moments a_0..a_N of the 2T-periodization of a measure:
//   a_0 = mu([-T, T]) / (2T),
//   a_n = (1/T) * integral_{-T}^{T} cos(n pi x / T) dmu(x), n >= 1.
struct MomentSequence {
    double T = 0.0;
    std::vector<double> values;
    std::vector<Provenance> provenance;

    int max_index() const { return static_cast<int>(values.size()) - 1; }

    // Wrap externally known moments (tests, exact constructions).
    static MomentSequence from_values(double T, std::vector<double> values,
                                      Provenance p = Provenance::ClosedForm);
};

// Computes a_0..a_max_index. Atoms contribute mass * cos(n pi x / T)
// exactly; the density goes through the closed form when the builtin has
// one and through adaptive quadrature otherwise. Atoms with |x| > T fall
// outside the periodization window and are dropped; an atom at |x| = T is
// an error since the periodization would count it twice.
MomentSequence compute_moments(const MeasureSpec& spec, double T,
                               int max_index);

} // namespace periham
