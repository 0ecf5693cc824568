#include "periham/measure.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "periham/errors.hpp"
#include "periham/quadrature.hpp"

namespace periham {

using nlohmann::json;

namespace {

constexpr double kNegativityTol = 1e-12;
constexpr double kEvennessTol = 1e-12;

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty())
            out += "; ";
        out += p;
    }
    return out;
}

} // namespace

double BuiltinDensity::eval(double x) const {
    switch (kind) {
    case Kind::Constant:
        return params[0];
    case Kind::OnePlusCos:
        return 1.0 + std::cos(x);
    case Kind::OnePlusSinc:
        // continuous extension of sin(x)/x at the origin
        return x == 0.0 ? 2.0 : 1.0 + std::sin(x) / x;
    case Kind::OnePlusChirp:
        return 1.0 + std::sin(x * x);
    case Kind::OnePlusAbsPow:
        return 1.0 + std::pow(std::abs(x), params[0]);
    case Kind::PoissonLike:
        return params[0] / (1.0 + x * x);
    }
    throw eval_error("corrupt builtin density");
}

bool BuiltinDensity::has_closed_form_moments() const {
    return kind == Kind::Constant || kind == Kind::OnePlusCos;
}

std::string BuiltinDensity::name() const {
    switch (kind) {
    case Kind::Constant:      return "constant";
    case Kind::OnePlusCos:    return "one_plus_cos";
    case Kind::OnePlusSinc:   return "one_plus_sinc";
    case Kind::OnePlusChirp:  return "one_plus_chirp";
    case Kind::OnePlusAbsPow: return "one_plus_abs_pow";
    case Kind::PoissonLike:   return "poisson_like";
    }
    return "?";
}

BuiltinDensity BuiltinDensity::make(Kind kind, std::vector<double> params) {
    BuiltinDensity b{kind, std::move(params)};
    switch (kind) {
    case Kind::Constant:
        if (b.params.empty())
            b.params = {1.0};
        if (b.params.size() != 1 || b.params[0] <= 0.0)
            throw validation_error("constant density needs one positive parameter");
        break;
    case Kind::OnePlusAbsPow:
        if (b.params.size() != 1 || b.params[0] <= 0.0)
            throw validation_error("one_plus_abs_pow needs one positive exponent parameter");
        break;
    case Kind::PoissonLike:
        if (b.params.empty())
            b.params = {1.0};
        if (b.params.size() != 1 || b.params[0] <= 0.0)
            throw validation_error("poisson_like needs one positive scale parameter");
        break;
    default:
        if (!b.params.empty())
            throw validation_error(b.name() + " takes no parameters");
        break;
    }
    return b;
}

BuiltinDensity BuiltinDensity::from_name(const std::string& name,
                                         std::vector<double> params) {
    if (name == "constant")
        return make(Kind::Constant, std::move(params));
    if (name == "one_plus_cos")
        return make(Kind::OnePlusCos, std::move(params));
    if (name == "one_plus_sinc")
        return make(Kind::OnePlusSinc, std::move(params));
    if (name == "one_plus_chirp")
        return make(Kind::OnePlusChirp, std::move(params));
    if (name == "one_plus_abs_pow")
        return make(Kind::OnePlusAbsPow, std::move(params));
    if (name == "poisson_like")
        return make(Kind::PoissonLike, std::move(params));
    throw validation_error("unknown builtin density '" + name + "'");
}

double MeasureSpec::density_at(double x) const {
    double v;
    if (builtin)
        v = builtin->eval(x);
    else if (expr)
        v = expr->eval(x);
    else
        throw validation_error("measure has no density part");
    if (v < -kNegativityTol) {
        std::ostringstream os;
        os << "invalid measure: density is " << v << " at x = " << x;
        throw eval_error(os.str());
    }
    return v < 0.0 ? 0.0 : v;
}

MeasureSpec MeasureSpec::from_json(const json& j) {
    try {
        MeasureSpec m;
        m.even_flag = j.value("even", true);
        if (j.contains("atoms")) {
            for (const auto& a : j.at("atoms"))
                m.atoms.push_back(
                    {a.at("x").get<double>(), a.at("mass").get<double>()});
        }
        if (j.contains("density") && !j.at("density").is_null()) {
            const auto& d = j.at("density");
            const std::string kind = d.at("kind").get<std::string>();
            if (kind == "expr") {
                m.expr = parse_density(d.at("source").get<std::string>());
            } else if (kind == "builtin") {
                std::vector<double> params;
                if (d.contains("params"))
                    params = d.at("params").get<std::vector<double>>();
                m.builtin =
                    BuiltinDensity::from_name(d.at("name").get<std::string>(),
                                              std::move(params));
            } else {
                throw validation_error("density kind must be 'expr' or 'builtin'");
            }
        }
        return m;
    } catch (const json::exception& e) {
        throw validation_error(std::string("invalid measure JSON: ") + e.what());
    }
}

MeasureSpec MeasureSpec::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw validation_error("cannot open measure file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw validation_error(std::string("invalid measure JSON: ") + e.what());
    }
    return from_json(j);
}

json MeasureSpec::to_json() const {
    json j;
    j["even"] = even_flag;
    j["atoms"] = json::array();
    for (const auto& a : atoms)
        j["atoms"].push_back({{"x", a.x}, {"mass", a.mass}});
    if (builtin) {
        j["density"] = {{"kind", "builtin"},
                        {"name", builtin->name()},
                        {"params", builtin->params}};
    } else if (expr) {
        j["density"] = {{"kind", "expr"}, {"source", expr->source}};
    } else {
        j["density"] = nullptr;
    }
    return j;
}

ValidationReport validate_even_positive(const MeasureSpec& spec, double range) {
    if (!(range > 0.0))
        throw validation_error("validation range must be positive");

    ValidationReport rep;
    auto fail = [&](const std::string& why) {
        rep.pass = false;
        rep.failures.push_back(why);
    };

    if (!spec.even_flag)
        fail("even flag is not set; only even measures are supported");
    if (spec.atoms.empty() && !spec.has_density())
        fail("measure is empty (no atoms, no density)");

    for (const auto& a : spec.atoms) {
        if (!(a.mass > 0.0)) {
            rep.atom_masses_positive = false;
            std::ostringstream os;
            os << "atom at x = " << a.x << " has non-positive mass " << a.mass;
            fail(os.str());
        }
    }
    const auto pos_tol = [](double x, double y) {
        return 1e-12 * std::max({1.0, std::abs(x), std::abs(y)});
    };
    for (std::size_t i = 0; i < spec.atoms.size(); ++i) {
        for (std::size_t k = i + 1; k < spec.atoms.size(); ++k) {
            if (std::abs(spec.atoms[i].x - spec.atoms[k].x) <=
                pos_tol(spec.atoms[i].x, spec.atoms[k].x)) {
                rep.atoms_distinct = false;
                std::ostringstream os;
                os << "duplicate atom position x = " << spec.atoms[i].x;
                fail(os.str());
            }
        }
    }
    for (const auto& a : spec.atoms) {
        bool found = false;
        for (const auto& b : spec.atoms) {
            if (std::abs(b.x + a.x) <= pos_tol(a.x, b.x) &&
                std::abs(b.mass - a.mass) <=
                    1e-12 * std::max(1.0, std::abs(a.mass))) {
                found = true;
                break;
            }
        }
        if (!found) {
            rep.atoms_symmetric = false;
            std::ostringstream os;
            os << "atom at x = " << a.x << " has no mirror atom at -x";
            fail(os.str());
        }
    }

    if (spec.has_density()) {
        const int grid = 1024;
        bool eval_ok = true;
        auto raw = [&](double x) {
            return spec.builtin ? spec.builtin->eval(x) : spec.expr->eval(x);
        };
        for (int i = 0; i < grid && eval_ok; ++i) {
            double x = -range + 2.0 * range * i / (grid - 1);
            try {
                double v = raw(x);
                double w = raw(-x);
                rep.most_negative = std::min(rep.most_negative, v);
                double res = std::abs(v - w) / (1.0 + std::abs(v));
                rep.evenness_residual = std::max(rep.evenness_residual, res);
            } catch (const eval_error& e) {
                std::ostringstream os;
                os << "density evaluation failed at x = " << x << ": "
                   << e.what();
                fail(os.str());
                eval_ok = false;
            }
        }
        if (eval_ok) {
            if (rep.most_negative < -kNegativityTol) {
                std::ostringstream os;
                os << "density is negative (min " << rep.most_negative << ")";
                fail(os.str());
            }
            if (rep.evenness_residual > kEvennessTol) {
                std::ostringstream os;
                os << "density is not even (residual " << rep.evenness_residual
                   << ")";
                fail(os.str());
            }
        }
    }

    return rep;
}

double measure_mass(const MeasureSpec& spec, double a, double b) {
    if (!(b > a))
        return 0.0;
    double s = 0.0;
    if (spec.has_density()) {
        int cells = std::clamp(static_cast<int>(std::ceil((b - a) * 32.0)), 8, 4096);
        s += quad::fixed_panel_integral(
            [&](double x) { return spec.density_at(x); }, a, b, cells, 4);
    }
    for (const auto& at : spec.atoms)
        if (a < at.x && at.x < b)
            s += at.mass;
    return s;
}

PwDiagnostic pw_diagnostic(const MeasureSpec& spec, double range, double delta,
                           double window) {
    if (!(range > 0.0) || !(delta > 0.0) || !(window > 0.0))
        throw validation_error("pw_diagnostic needs positive range, delta, window");

    PwDiagnostic diag;
    diag.range = range;
    diag.delta = delta;
    diag.window = window;
    diag.note = "heuristic diagnostic over a finite range - not a proof";

    const int sup_grid = 1024;
    for (int i = 0; i <= sup_grid; ++i) {
        double x = -range + 2.0 * range * i / sup_grid;
        diag.sup_unit_window_mass =
            std::max(diag.sup_unit_window_mass, measure_mass(spec, x, x + 1.0));
    }

    const int nwin = static_cast<int>(std::floor(2.0 * range / window + 1e-9));
    for (int w = 0; w < nwin; ++w) {
        const double L = -range + w * window;
        const double R = L + window;
        // cumulative mass on a grid fine enough to resolve delta
        const double h = std::max(delta / 8.0, window / 4096.0);
        const int cells = std::max(1, static_cast<int>(std::ceil((R - L) / h)));
        std::vector<double> pts(cells + 1), cum(cells + 1, 0.0);
        for (int i = 0; i <= cells; ++i)
            pts[i] = L + (R - L) * i / cells;
        for (int i = 1; i <= cells; ++i) {
            double m = 0.0;
            if (spec.has_density())
                m += quad::fixed_panel_integral(
                    [&](double x) { return spec.density_at(x); }, pts[i - 1],
                    pts[i], 1, 4);
            for (const auto& at : spec.atoms)
                if (pts[i - 1] < at.x && at.x <= pts[i])
                    m += at.mass;
            cum[i] = cum[i - 1] + m;
        }
        // greedy left-to-right: take the earliest interval exceeding delta
        // in both length and mass, then restart at its right end
        int count = 0;
        int l = 0;
        for (int r = 1; r <= cells; ++r) {
            if (pts[r] - pts[l] > delta && cum[r] - cum[l] > delta) {
                ++count;
                l = r;
            }
        }
        diag.windows.push_back({L, R, count});
    }
    return diag;
}

std::string format_failures(const ValidationReport& rep) {
    return join(rep.failures);
}

} // namespace periham
