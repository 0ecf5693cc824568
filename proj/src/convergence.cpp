#include "periham/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "periham/errors.hpp"
#include "periham/quadrature.hpp"

namespace periham {

namespace {

constexpr double kPi = std::numbers::pi;

double sqrt_2pi() { return std::sqrt(2.0 * kPi); }

// Step table for the 1 + cos x recovery at T = pi:
// 1, 1/3, 2/3, 2/5, 3/5, 3/7, 4/7, 4/9, ...
double cos_step_table(int n) {
    if (n == 0)
        return 1.0;
    const int k = (n + 1) / 2;
    if (n % 2 == 1)
        return static_cast<double>(k) / (2 * k + 1);
    return static_cast<double>(k + 1) / (2 * k + 1);
}

double cos_ref_h11(double t) {
    if (t < 0.0)
        throw validation_error("reference evaluated at negative t");
    if (t == 0.0)
        return 1.0;
    const int n = static_cast<int>(std::ceil(2.0 * t)) - 1;
    return cos_step_table(n);
}

double cos_ref_integral(double a, double b) {
    double acc = 0.0;
    const int last = static_cast<int>(std::ceil(2.0 * b));
    for (int n = 0; n < last; ++n) {
        const double lo = std::max(a, 0.5 * n);
        const double hi = std::min(b, 0.5 * (n + 1));
        if (hi > lo)
            acc += cos_step_table(n) * (hi - lo);
    }
    return acc;
}

double delta_step_value(double T, int n) {
    return sqrt_2pi() * T * T / ((n * kPi + T) * (n * kPi + T + kPi));
}

int pi_multiple(double T) {
    const double m = T / kPi;
    const double r = std::round(m);
    if (r < 1.0 || std::abs(m - r) > 1e-9)
        throw validation_error(
            "one_plus_cos step table needs T to be a multiple of pi");
    return static_cast<int>(r);
}

bool approx(double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

} // namespace

const char* to_string(MeasureClass c) {
    switch (c) {
    case MeasureClass::Pw:                   return "pw";
    case MeasureClass::Decay:                return "decay";
    case MeasureClass::PolyGrowthTimesDecay: return "poly_growth_times_decay";
    case MeasureClass::Unknown:              return "unknown";
    }
    return "?";
}

double psi_T(double T, double t) {
    if (!(T > 0.0))
        throw validation_error("psi_T needs T > 0");
    return sqrt_2pi() * T * T /
           (4.0 * t * t * T * T + 4.0 * t * T * T + 6.0 * kPi * t * T + T * T +
            3.0 * kPi * T + 2.0 * kPi * kPi);
}

MeasureClass eligibility(const MeasureSpec& spec) {
    ValidationReport rep = validate_even_positive(spec, 8.0);
    if (!rep.pass)
        throw validation_error("measure failed validation: " +
                               format_failures(rep));

    // declared class for pure builtins
    if (spec.atoms.empty() && spec.builtin) {
        switch (spec.builtin->kind) {
        case BuiltinDensity::Kind::Constant:
        case BuiltinDensity::Kind::OnePlusCos:
        case BuiltinDensity::Kind::OnePlusSinc:
        case BuiltinDensity::Kind::OnePlusChirp:
            return MeasureClass::Pw;
        case BuiltinDensity::Kind::OnePlusAbsPow:
            return MeasureClass::PolyGrowthTimesDecay;
        case BuiltinDensity::Kind::PoissonLike:
            return MeasureClass::Decay;
        }
    }

    // numeric spot checks on the windowed mass w(x) = mu((x, x+1))
    const double x_hi = 48.0;
    const int npts = 97;
    std::vector<double> xs(npts), w(npts);
    double wmax = 0.0, wmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < npts; ++i) {
        xs[i] = x_hi * i / (npts - 1);
        w[i] = measure_mass(spec, xs[i], xs[i] + 1.0);
        wmax = std::max(wmax, w[i]);
        wmin = std::min(wmin, w[i]);
    }
    const double tol = 1e-9 * (1.0 + wmax);

    bool nonincreasing = true, nondecreasing = true;
    for (int i = 0; i + 1 < npts; ++i) {
        if (w[i + 1] > w[i] + tol)
            nonincreasing = false;
        if (w[i + 1] + tol < w[i])
            nondecreasing = false;
    }
    if (nonincreasing)
        return MeasureClass::Decay;

    if (spec.has_density()) {
        double dmin = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 1024; ++i) {
            const double x = -12.0 + 24.0 * i / 1023;
            dmin = std::min(dmin, spec.density_at(x));
        }
        if (dmin > 1e-9 && wmin > 0.0 && wmax <= 4.0 * wmin)
            return MeasureClass::Pw;
    }

    if (nondecreasing && w[2] > 0.0) {
        // fitted growth exponent over the upper half of the grid
        const double q =
            std::log(w[npts - 1] / w[2]) / std::log(xs[npts - 1] / xs[2]);
        if (q <= 8.0)
            return MeasureClass::PolyGrowthTimesDecay;
    }
    return MeasureClass::Unknown;
}

std::optional<ReferenceSolution> reference_catalog(const std::string& name) {
    if (name == "lebesgue") {
        ReferenceSolution r;
        r.name = name;
        r.h11 = [](double) { return 1.0; };
        r.h11_integral = [](double a, double b) { return b - a; };
        r.hat_integral = [](const HatFunction& h) { return 0.5 * (h.b - h.a); };
        r.step_value = [](double, int) { return 1.0; };
        return r;
    }
    if (name == "one_plus_delta") {
        ReferenceSolution r;
        r.name = name;
        r.h11 = [](double t) {
            return sqrt_2pi() / ((2.0 * t + 1.0) * (2.0 * t + 1.0));
        };
        r.h11_integral = [](double a, double b) {
            return 0.5 * sqrt_2pi() *
                   (1.0 / (2.0 * a + 1.0) - 1.0 / (2.0 * b + 1.0));
        };
        r.step_value = delta_step_value;
        r.psi = psi_T;
        return r;
    }
    if (name == "one_plus_cos") {
        ReferenceSolution r;
        r.name = name;
        r.h11 = cos_ref_h11;
        r.h11_integral = cos_ref_integral;
        r.hat_integral = [](const HatFunction& hat) {
            // the reference is itself a step function on the half-integer
            // grid, so the step-times-hat rule is exact
            StepFunction table;
            table.T = kPi;
            const int pieces =
                static_cast<int>(std::ceil(2.0 * hat.b)) + 1;
            for (int n = 0; n < pieces; ++n)
                table.values.push_back(cos_step_table(n));
            return integrate_against_hat(table, hat);
        };
        r.step_value = [](double T, int n) {
            return cos_step_table(n / pi_multiple(T));
        };
        return r;
    }
    return std::nullopt;
}

std::optional<ReferenceSolution> match_reference(const MeasureSpec& spec) {
    if (spec.atoms.empty() && spec.builtin) {
        if (spec.builtin->kind == BuiltinDensity::Kind::Constant &&
            approx(spec.builtin->params[0], 1.0))
            return reference_catalog("lebesgue");
        if (spec.builtin->kind == BuiltinDensity::Kind::OnePlusCos)
            return reference_catalog("one_plus_cos");
    }
    if (spec.atoms.size() == 1 && spec.builtin &&
        spec.builtin->kind == BuiltinDensity::Kind::Constant &&
        approx(spec.atoms[0].x, 0.0) &&
        approx(spec.atoms[0].mass, sqrt_2pi()) &&
        approx(spec.builtin->params[0], 1.0 / sqrt_2pi()))
        return reference_catalog("one_plus_delta");
    return std::nullopt;
}

double HatFunction::operator()(double t) const {
    if (t <= a || t >= b)
        return 0.0;
    if (t <= peak)
        return (t - a) / (peak - a);
    return (b - t) / (b - peak);
}

double integrate_against_hat(const StepFunction& h, const HatFunction& hat) {
    const double w = h.piece_width();
    // the integrand is linear between consecutive breakpoints of the step
    // grid refined by the hat's kink, so trapezoids are exact
    double acc = 0.0;
    for (int n = 0; n < h.piece_count(); ++n) {
        double lo = std::max(hat.a, n * w);
        double hi = std::min(hat.b, (n + 1) * w);
        if (hi <= lo)
            continue;
        const double v = h.values[n];
        if (lo < hat.peak && hat.peak < hi) {
            acc += v * 0.5 * (hat(lo) + hat(hat.peak)) * (hat.peak - lo);
            acc += v * 0.5 * (hat(hat.peak) + hat(hi)) * (hi - hat.peak);
        } else {
            acc += v * 0.5 * (hat(lo) + hat(hi)) * (hi - lo);
        }
    }
    return acc;
}

ConvergenceReport run_ladder(const MeasureSpec& spec,
                             const std::vector<double>& Ts, double t_max,
                             const std::vector<std::pair<double, double>>& intervals,
                             const std::vector<HatFunction>& hats,
                             const ReferenceSolution* reference) {
    if (Ts.empty())
        throw validation_error("T ladder is empty");
    for (std::size_t i = 0; i < Ts.size(); ++i) {
        if (!(Ts[i] > 0.0))
            throw validation_error("ladder entries must be positive");
        if (i > 0 && !(Ts[i] > Ts[i - 1]))
            throw validation_error("ladder entries must be strictly increasing");
    }
    if (!(t_max > 0.0))
        throw validation_error("t_max must be positive");
    for (const auto& [a, b] : intervals)
        if (!(0.0 <= a && a < b && b <= t_max))
            throw validation_error("intervals must satisfy 0 <= a < b <= t_max");
    for (const auto& hat : hats)
        if (!(0.0 <= hat.a && hat.a < hat.peak && hat.peak < hat.b &&
              hat.b <= t_max))
            throw validation_error("hat functions must satisfy 0 <= a < peak < b <= t_max");

    ConvergenceReport report;
    report.label = eligibility(spec);
    report.note =
        "weak-star data over finitely many intervals and test functions; "
        "finite sampling cannot resolve almost-everywhere statements";

    for (double T : Ts) {
        LadderEntry entry;
        entry.T = T;
        try {
            StepFunction h = recover_hamiltonian(spec, T, t_max);
            for (const auto& [a, b] : intervals) {
                IntervalResult ir{a, b, h.integrate(a, b), {}, {}};
                if (reference) {
                    double ref = reference->h11_integral
                                     ? reference->h11_integral(a, b)
                                     : quad::integrate(reference->h11, a, b);
                    ir.reference = ref;
                    ir.abs_dev = std::abs(ir.integral - ref);
                }
                entry.intervals.push_back(ir);
            }
            for (const auto& hat : hats) {
                HatResult hr{hat, integrate_against_hat(h, hat), {}, {}};
                if (reference) {
                    double ref;
                    if (reference->hat_integral) {
                        ref = reference->hat_integral(hat);
                    } else {
                        auto fg = [&](double x) {
                            return reference->h11(x) * hat(x);
                        };
                        ref = quad::integrate(fg, hat.a, hat.peak) +
                              quad::integrate(fg, hat.peak, hat.b);
                    }
                    hr.reference = ref;
                    hr.abs_dev = std::abs(hr.integral - ref);
                }
                entry.hats.push_back(hr);
            }
        } catch (const breakdown_error& e) {
            entry.error = e.what();
        } catch (const quadrature_error& e) {
            entry.error = e.what();
        }
        report.entries.push_back(std::move(entry));
    }

    if (reference) {
        for (std::size_t i = 0; i < intervals.size(); ++i) {
            IntervalSummary s{true, false};
            const LadderEntry* first = nullptr;
            const LadderEntry* last = nullptr;
            double prev = -1.0;
            for (const auto& entry : report.entries) {
                if (!entry.ok())
                    continue;
                if (!first)
                    first = &entry;
                last = &entry;
                const double dev = *entry.intervals[i].abs_dev;
                if (prev >= 0.0 && dev > prev * (1.0 + 1e-12))
                    s.monotone_nonincreasing = false;
                prev = dev;
            }
            if (first && last && first != last)
                s.endpoint_improved = *last->intervals[i].abs_dev <
                                      *first->intervals[i].abs_dev;
            report.interval_summaries.push_back(s);
        }
    }
    return report;
}

} // namespace periham
