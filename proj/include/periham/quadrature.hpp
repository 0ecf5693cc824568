#pragma once

#include <functional>
#include <vector>

namespace periham::quad {

// Gauss-Legendre nodes and weights on [-1, 1], computed once per order by
// Newton iteration on the Legendre polynomial.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussRule& gauss_legendre(int npoints);

// Composite fixed-order Gauss-Legendre over `panels` equal panels. No error
// control; used where a cheap deterministic estimate is enough.
double fixed_panel_integral(const std::function<double(double)>& f, double a,
                            double b, int panels, int order);

// Adaptive integral of f over [a, b]. Starts from a composite 12-point
// Gauss-Legendre grid of max(64, 8*(oscillation_index+1)) panels, then
// bisects the panel with the largest refinement gap until the summed gaps
// drop below 1e-11 * (1 + |integral|). A panel refined 20 times without
// converging raises quadrature_error. Deterministic: ties break toward the
// leftmost panel and the final sum runs in ascending panel order.
double integrate(const std::function<double(double)>& f, double a, double b,
                 int oscillation_index = 0);

} // namespace periham::quad
