#include "periham/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "periham/errors.hpp"

namespace periham {

namespace {

constexpr double kPi = std::numbers::pi;

[[noreturn]] void rethrow_with_time(const breakdown_error& e, double T) {
    const double w = kPi / (2.0 * T);
    const double t_left = e.order() * w;
    std::ostringstream os;
    os << e.what() << "; order " << e.order() << " corresponds to t in ("
       << t_left << ", " << t_left + w << "]";
    throw breakdown_error(os.str(), e.order(), t_left);
}

} // namespace

double StepFunction::piece_width() const { return kPi / (2.0 * T); }

double StepFunction::t_max() const { return values.size() * piece_width(); }

double StepFunction::operator()(double t) const {
    if (t < 0.0 || t > t_max())
        throw validation_error("step function evaluated outside its range");
    if (t == 0.0)
        return values[0];
    int n = static_cast<int>(std::ceil(t / piece_width())) - 1;
    n = std::clamp(n, 0, piece_count() - 1);
    return values[n];
}

double StepFunction::integrate(double a, double b) const {
    if (!(a <= b) || a < 0.0 || b > t_max() * (1.0 + 1e-12))
        throw validation_error("integration bounds outside the recovered range");
    const double w = piece_width();
    double acc = 0.0;
    for (int n = 0; n < piece_count(); ++n) {
        const double lo = std::max(a, n * w);
        const double hi = std::min(b, (n + 1) * w);
        if (hi > lo)
            acc += values[n] * (hi - lo);
    }
    return acc;
}

StepFunction recover_from_moments(const MomentSequence& moments,
                                  double t_max) {
    if (!(t_max > 0.0))
        throw validation_error("t_max must be positive");
    const double T = moments.T;
    const int n_max = static_cast<int>(std::ceil(2.0 * T * t_max / kPi));
    if (n_max + 1 > static_cast<int>(moments.values.size()))
        throw validation_error("not enough moments to recover up to t_max");

    NestedToeplitzSolve nested;
    try {
        nested = solve_nested(moments, n_max);
    } catch (const breakdown_error& e) {
        rethrow_with_time(e, T);
    }

    StepFunction h;
    h.T = T;
    h.values.resize(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        h.values[n] = nested.step(n);
        if (!(h.values[n] > 0.0))
            rethrow_with_time(
                breakdown_error("recovered step value is not positive", n), T);
    }
    return h;
}

StepFunction recover_hamiltonian(const MeasureSpec& spec, double T,
                                 double t_max) {
    if (!(T > 0.0))
        throw validation_error("half-period T must be positive");
    if (!(t_max > 0.0))
        throw validation_error("t_max must be positive");
    const int n_max = static_cast<int>(std::ceil(2.0 * T * t_max / kPi));
    MomentSequence moments = compute_moments(spec, T, n_max);
    return recover_from_moments(moments, t_max);
}

StepFunction h22(const StepFunction& h11) {
    StepFunction h = h11;
    for (double& v : h.values) {
        if (!(v > 0.0))
            throw validation_error("h11 must be positive to invert");
        v = 1.0 / v;
    }
    return h;
}

double PiecewiseConstant::raw_value(double s) const {
    if (s < -t || s > t)
        return 0.0;
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), s);
    int idx = static_cast<int>(it - breakpoints.begin()) - 1;
    idx = std::clamp(idx, 0, piece_count() - 1);
    return raw[idx];
}

double PiecewiseConstant::value(double s) const {
    return raw_value(s) / std::sqrt(2.0 * kPi);
}

double PiecewiseConstant::integral() const {
    double acc = 0.0;
    for (int i = 0; i < piece_count(); ++i)
        acc += values[i] * (breakpoints[i + 1] - breakpoints[i]);
    return acc;
}

PiecewiseConstant kernel_transform(const MomentSequence& moments, double t) {
    if (!(t > 0.0))
        throw validation_error("kernel transform time must be positive");
    const double T = moments.T;
    const double lambda = kPi / T;   // axis contraction and comb spacing
    const double tp = t / lambda;    // time in the period-2pi picture
    const int n = std::max(0, static_cast<int>(std::ceil(2.0 * tp)) - 1);
    if (n + 1 > static_cast<int>(moments.values.size()))
        throw validation_error("not enough moments for the kernel transform");

    NestedToeplitzSolve nested;
    try {
        nested = solve_nested(moments, n);
    } catch (const breakdown_error& e) {
        rethrow_with_time(e, T);
    }
    const std::vector<double>& xn = nested.solutions[n];
    const std::vector<double>* xprev =
        n > 0 ? &nested.solutions[n - 1] : nullptr;

    PiecewiseConstant f;
    f.t = t;
    f.T = T;
    f.breakpoints.resize(2 * n + 2);
    f.raw.resize(2 * n + 1);

    // period-2pi geometry: the k-th carrier interval is [k - tp, k + tp - n]
    // (center k - n/2, length 2tp - n) and the gap after it ends at
    // k + 1 - tp; zero-length gaps at half-integer times are kept
    f.breakpoints.front() = -t;
    f.breakpoints.back() = t;
    for (int k = 0; k < n; ++k) {
        f.breakpoints[2 * k + 1] = (k + tp - n) * lambda;
        f.breakpoints[2 * k + 2] = (k + 1 - tp) * lambda;
    }
    for (int k = 0; k <= n; ++k)
        f.raw[2 * k] = xn[k];
    for (int k = 0; k < n; ++k)
        f.raw[2 * k + 1] = (*xprev)[k];

    const double scale = 1.0 / std::sqrt(2.0 * kPi);
    f.values.resize(f.raw.size());
    for (std::size_t i = 0; i < f.raw.size(); ++i)
        f.values[i] = f.raw[i] * scale;
    return f;
}

double kernel_value_at_zero(const PiecewiseConstant& f) {
    return f.integral() / std::sqrt(2.0 * kPi);
}

double convolution_residual(const PiecewiseConstant& f,
                            const MomentSequence& moments, int samples) {
    if (samples < 3)
        throw validation_error("convolution check needs at least 3 samples");

    const double lambda = kPi / moments.T;
    const std::vector<double>& a = moments.values;
    // The comb weights are sqrt(2 pi) a_0 at 0 and sqrt(pi/2) a_k at +-k
    // lambda; folding the 1/sqrt(2 pi) amplitude of f into them leaves
    // a_0 and a_k / 2 acting on the raw solver components, so the
    // identity-measure case comes out exactly zero.
    double worst = 0.0;
    for (int j = 0; j < samples; ++j) {
        const double x = -f.t + (j + 0.5) * (2.0 * f.t / samples);
        double r = a[0] * f.raw_value(x) - 1.0;
        for (std::size_t k = 1; k < a.size(); ++k) {
            const double shift = k * lambda;
            if (shift > 2.0 * f.t + lambda)
                break;
            r += 0.5 * a[k] *
                 (f.raw_value(x - shift) + f.raw_value(x + shift));
        }
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

StepFunction h11_from_kernel(const MomentSequence& moments, double t_max) {
    if (!(t_max > 0.0))
        throw validation_error("t_max must be positive");
    const double T = moments.T;
    const double w = kPi / (2.0 * T);
    const int n_max = static_cast<int>(std::ceil(2.0 * T * t_max / kPi));

    StepFunction h;
    h.T = T;
    h.values.resize(n_max + 1);
    const double factor = std::sqrt(kPi / 2.0);
    for (int n = 0; n <= n_max; ++n) {
        // t -> integral(f_t) is linear inside each piece; two interior
        // evaluations recover the slope exactly
        const double ta = (n + 0.25) * w;
        const double tb = (n + 0.75) * w;
        const double Ia = kernel_transform(moments, ta).integral();
        const double Ib = kernel_transform(moments, tb).integral();
        h.values[n] = factor * (Ib - Ia) / (tb - ta);
    }
    return h;
}

} // namespace periham
