#include "periham/opuc.hpp"

#include <cmath>
#include <sstream>

#include "periham/errors.hpp"

namespace periham {

SzegoData szego_from_moments(const MomentSequence& moments, int max_order) {
    if (max_order < 0)
        throw validation_error("max_order must be non-negative");
    if (max_order + 1 > static_cast<int>(moments.values.size()))
        throw validation_error("szego_from_moments needs max_order + 1 moments");

    std::vector<double> c(moments.values.size());
    c[0] = moments.values[0];
    for (std::size_t k = 1; k < c.size(); ++k)
        c[k] = 0.5 * moments.values[k];

    const double breakdown_tol = 1e-12 * moments.values[0];
    if (c[0] <= breakdown_tol)
        throw breakdown_error("measure is degenerate: c_0 <= 0", 0);

    SzegoData out;
    out.reflection.reserve(max_order);
    out.monic_norm_sq.reserve(max_order + 1);
    out.monic_at_one.reserve(max_order + 1);
    out.phi1_sq.reserve(max_order + 1);

    std::vector<double> coef{1.0}; // monic Phi_n, ascending powers
    double norm_sq = c[0];
    double at_one = 1.0;
    out.monic_norm_sq.push_back(norm_sq);
    out.monic_at_one.push_back(at_one);
    out.phi1_sq.push_back(at_one * at_one / norm_sq);

    for (int n = 0; n < max_order; ++n) {
        // alpha_n = <z Phi_n, 1> / ||Phi_n||^2; real moments keep it real
        double acc = 0.0;
        for (int j = 0; j <= n; ++j)
            acc += coef[j] * c[j + 1];
        const double alpha = acc / norm_sq;
        out.reflection.push_back(alpha);
        if (!(std::abs(alpha) < 1.0)) {
            std::ostringstream os;
            os << "Szego recursion broke down at order " << n + 1
               << ": |reflection| = " << std::abs(alpha);
            throw breakdown_error(os.str(), n + 1);
        }

        // Phi_{n+1}(z) = z Phi_n(z) - alpha * Phi_n^*(z)
        std::vector<double> next(n + 2, 0.0);
        for (int j = 0; j <= n; ++j) {
            next[j + 1] += coef[j];
            next[j] -= alpha * coef[n - j];
        }
        coef = std::move(next);
        at_one = (1.0 - alpha) * at_one;
        norm_sq *= 1.0 - alpha * alpha;
        if (norm_sq <= breakdown_tol) {
            std::ostringstream os;
            os << "Szego recursion broke down at order " << n + 1
               << ": ||Phi||^2 = " << norm_sq;
            throw breakdown_error(os.str(), n + 1);
        }
        out.monic_norm_sq.push_back(norm_sq);
        out.monic_at_one.push_back(at_one);
        out.phi1_sq.push_back(at_one * at_one / norm_sq);
    }
    return out;
}

StepIdentityReport verify_step_identity(const SzegoData& szego,
                                        const NestedToeplitzSolve& nested) {
    const int orders =
        std::min(szego.max_order(), nested.max_order());
    StepIdentityReport rep;
    rep.rel_dev.reserve(orders + 1);
    for (int n = 0; n <= orders; ++n) {
        const double step = nested.step(n);
        const double phi = szego.phi1_sq[n];
        const double denom = std::max(std::abs(step), 1e-300);
        const double dev = std::abs(phi - step) / denom;
        rep.rel_dev.push_back(dev);
        rep.max_rel_dev = std::max(rep.max_rel_dev, dev);
    }
    return rep;
}

} // namespace periham
