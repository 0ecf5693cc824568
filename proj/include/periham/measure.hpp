#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "periham/density_expr.hpp"

namespace periham {

struct Atom {
    double x;
    double mass;
};

// Densities with known structure. Each provides a pointwise evaluator;
// constant and one_plus_cos additionally provide closed-form moment
// integrals (see moments.cpp).
struct BuiltinDensity {
    enum class Kind {
        Constant,      // c                      (params: [c], default 1)
        OnePlusCos,    // 1 + cos(x)
        OnePlusSinc,   // 1 + sin(x)/x, value 2 at x = 0
        OnePlusChirp,  // 1 + sin(x^2)
        OnePlusAbsPow, // 1 + |x|^q              (params: [q], q > 0)
        PoissonLike,   // s / (1 + x^2)          (params: [s], default 1)
    };

    Kind kind;
    std::vector<double> params;

    double eval(double x) const;
    bool has_closed_form_moments() const;
    std::string name() const;

    static BuiltinDensity make(Kind kind, std::vector<double> params = {});
    static BuiltinDensity from_name(const std::string& name,
                                    std::vector<double> params);
};

// Even positive measure: point masses plus an absolutely continuous part
// given either as a builtin or as a parsed expression. Immutable after
// construction; evaluation is pure.
struct MeasureSpec {
    std::vector<Atom> atoms;
    std::optional<BuiltinDensity> builtin;
    std::optional<DensityExpr> expr;
    bool even_flag = true;

    bool has_density() const { return builtin.has_value() || expr.has_value(); }

    // Clamped density value: tiny negative noise (>= -1e-12) is flattened
    // to zero, anything below is an eval_error.
    double density_at(double x) const;

    static MeasureSpec from_json(const nlohmann::json& j);
    static MeasureSpec load(const std::string& path);
    nlohmann::json to_json() const;
};

struct ValidationReport {
    bool pass = true;
    double evenness_residual = 0.0; // max |rho(x)-rho(-x)| / (1+|rho(x)|)
    double most_negative = 0.0;     // min density over the grid
    bool atoms_symmetric = true;
    bool atom_masses_positive = true;
    bool atoms_distinct = true;
    std::vector<std::string> failures;
};

// Checks the MeasureSpec invariants on a 1024-point grid over
// [-range, range]. Failures are reported, not thrown.
ValidationReport validate_even_positive(const MeasureSpec& spec, double range);

// Heuristic mass of the open interval (a, b): fixed-order panel quadrature
// of the density plus the atoms strictly inside.
double measure_mass(const MeasureSpec& spec, double a, double b);

struct PwWindow {
    double a;
    double b;
    int count; // disjoint (mu, delta)-intervals found by the greedy scan
};

struct PwDiagnostic {
    double sup_unit_window_mass = 0.0; // sup over a grid of mu(x, x+1)
    std::vector<PwWindow> windows;
    double range;
    double delta;
    double window;
    std::string note;
};

// Finite-range sampling-measure diagnostic: reports sup mu(x, x+1) over
// [-range, range] and, per window, how many disjoint intervals with both
// length and mass above delta a greedy left-to-right scan finds.
PwDiagnostic pw_diagnostic(const MeasureSpec& spec, double range, double delta,
                           double window);

std::string format_failures(const ValidationReport& rep);

} // namespace periham
