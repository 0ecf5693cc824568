#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "periham/measure.hpp"
#include "periham/recovery.hpp"

namespace periham {

// Which convergence statement the T-ladder leans on. The label is a
// heuristic annotation: it never blocks a run.
enum class MeasureClass { Pw, Decay, PolyGrowthTimesDecay, Unknown };

const char* to_string(MeasureClass c);

MeasureClass eligibility(const MeasureSpec& spec);

// Closed-form curve interpolating the right endpoints of the recovered
// steps for the point-mass-plus-Lebesgue measure; tends to
// sqrt(2 pi) / (2t + 1)^2 as T grows.
double psi_T(double T, double t);

struct HatFunction;

// Closed-form comparison data for measures whose Hamiltonian is known.
struct ReferenceSolution {
    std::string name;
    std::function<double(double)> h11;
    std::function<double(double, double)> h11_integral; // exact over [a, b]
    // exact integral of h11 against a hat; adaptive quadrature of h11 * hat
    // is used when absent (only safe for smooth h11)
    std::function<double(const HatFunction&)> hat_integral;
    // per-T step closed form, when available (throws otherwise)
    std::function<double(double, int)> step_value;
    std::function<double(double, double)> psi; // psi(T, t), when available
};

// Shipped catalog: "lebesgue", "one_plus_delta", "one_plus_cos".
std::optional<ReferenceSolution> reference_catalog(const std::string& name);

// Structural match of a measure against the catalog.
std::optional<ReferenceSolution> match_reference(const MeasureSpec& spec);

// Piecewise-linear bump: 0 at a, 1 at peak, 0 at b.
struct HatFunction {
    double a;
    double peak;
    double b;

    double operator()(double t) const;
};

// Exact integral of a step function against a hat function.
double integrate_against_hat(const StepFunction& h, const HatFunction& hat);

struct IntervalResult {
    double a, b;
    double integral;
    std::optional<double> reference;
    std::optional<double> abs_dev;
};

struct HatResult {
    HatFunction hat;
    double integral;
    std::optional<double> reference;
    std::optional<double> abs_dev;
};

struct LadderEntry {
    double T;
    std::string error; // empty on success
    std::vector<IntervalResult> intervals;
    std::vector<HatResult> hats;

    bool ok() const { return error.empty(); }
};

struct IntervalSummary {
    bool monotone_nonincreasing;
    bool endpoint_improved; // deviation at the largest T beats the smallest
};

struct ConvergenceReport {
    std::vector<LadderEntry> entries;
    MeasureClass label = MeasureClass::Unknown;
    std::string note;
    std::vector<IntervalSummary> interval_summaries; // only with a reference
};

// Recovers h11^T for each T in the ladder and measures weak-star
// convergence data: integrals over the given intervals and against the hat
// functions, with deviations from the reference when one is supplied.
// Per-T recovery failures are recorded in the entry and do not abort the
// other rungs.
ConvergenceReport run_ladder(const MeasureSpec& spec,
                             const std::vector<double>& Ts, double t_max,
                             const std::vector<std::pair<double, double>>& intervals,
                             const std::vector<HatFunction>& hats = {},
                             const ReferenceSolution* reference = nullptr);

} // namespace periham
