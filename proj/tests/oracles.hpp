#pragma once

// Test-only oracles, kept independent of the library's integration and
// solver paths.

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "periham/moments.hpp"

namespace oracles {

// Midpoint Riemann sum; deliberately naive.
inline double riemann_integral(const std::function<double(double)>& f,
                               double a, double b, int n = 2000000) {
    const double h = (b - a) / n;
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        s += f(a + (i + 0.5) * h);
    return s * h;
}

// Positive trigonometric polynomial c_0 + sum_k c_k cos(kx). At T = pi its
// moments are the coefficients themselves (orthogonality), so exact moment
// sequences are available without quadrature.
struct TrigPoly {
    std::vector<double> coef; // c_0..c_K

    double operator()(double x) const {
        double s = coef[0];
        for (std::size_t k = 1; k < coef.size(); ++k)
            s += coef[k] * std::cos(k * x);
        return s;
    }

    periham::MomentSequence moments(int max_index) const {
        std::vector<double> a(max_index + 1, 0.0);
        for (std::size_t k = 0; k < coef.size() && k <= std::size_t(max_index); ++k)
            a[k] = coef[k];
        return periham::MomentSequence::from_values(3.141592653589793, std::move(a));
    }

    std::string source() const {
        std::string s;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", coef[0]);
        s = buf;
        for (std::size_t k = 1; k < coef.size(); ++k) {
            std::snprintf(buf, sizeof buf, " + %.17g*cos(%zu*x)", coef[k], k);
            s += buf;
        }
        return s;
    }
};

// c_0 = sum |c_k| + margin keeps the density bounded away from zero, hence
// the Toeplitz family positive definite at every order.
inline TrigPoly random_trig_poly(std::mt19937& rng, int max_degree,
                                 double margin = 0.25) {
    std::uniform_int_distribution<int> deg(1, max_degree);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    TrigPoly p;
    const int K = deg(rng);
    p.coef.resize(K + 1);
    double sum_abs = 0.0;
    for (int k = 1; k <= K; ++k) {
        p.coef[k] = amp(rng);
        sum_abs += std::abs(p.coef[k]);
    }
    p.coef[0] = sum_abs + margin;
    return p;
}

// ||J_n x - 1||_inf for the Toeplitz matrix built from the moments.
inline double toeplitz_residual(const periham::MomentSequence& m,
                                const std::vector<double>& x) {
    const int n = static_cast<int>(x.size());
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) {
            const int k = std::abs(i - j);
            row += (k == 0 ? m.values[0] : 0.5 * m.values[k]) * x[j];
        }
        worst = std::max(worst, std::abs(row - 1.0));
    }
    return worst;
}

} // namespace oracles
