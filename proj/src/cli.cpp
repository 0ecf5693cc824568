#include "periham/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "periham/convergence.hpp"
#include "periham/errors.hpp"
#include "periham/moments.hpp"
#include "periham/opuc.hpp"
#include "periham/recovery.hpp"
#include "periham/svg.hpp"
#include "periham/toeplitz.hpp"

namespace periham {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const char* kMeasureGrammar = R"(Measure JSON:
  {"even": true,
   "atoms": [{"x": <number>, "mass": <number>}, ...],
   "density": {"kind": "expr", "source": "<formula in x>"}
            | {"kind": "builtin", "name": "<name>", "params": [<number>, ...]}
            | null}
Builtins: constant [c], one_plus_cos, one_plus_sinc, one_plus_chirp,
          one_plus_abs_pow (q), poisson_like [scale].
Expressions: + - * / ^ (right assoc), unary -, sin cos abs sqrt exp, variable x.
T values accept pi literals: "pi", "2pi", "0.5*pi".)";

// Writes to the path, or stdout when the path is empty.
void emit(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw validation_error("cannot open output file '" + path + "'");
    out << content;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

double parse_real(const std::string& text) {
    char* end = nullptr;
    double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || text.empty())
        throw validation_error("cannot parse number '" + text + "'");
    return v;
}

std::vector<double> parse_pi_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& part : split(text, ','))
        out.push_back(parse_pi_value(part));
    return out;
}

std::vector<std::pair<double, double>> parse_intervals(const std::string& text) {
    std::vector<std::pair<double, double>> out;
    for (const auto& part : split(text, ',')) {
        auto ab = split(part, ':');
        if (ab.size() != 2)
            throw validation_error("interval must look like a:b, got '" + part +
                                   "'");
        out.emplace_back(parse_pi_value(ab[0]), parse_pi_value(ab[1]));
    }
    return out;
}

int default_moment_index(double T, double t_max) {
    return static_cast<int>(std::ceil(2.0 * T * t_max / kPi)) + 1;
}

struct CommonOpts {
    std::string measure_path;
    std::string T_text;
    std::string Ts_text;
    double t_max = 2.5;
    int N = -1;
    std::string out_path;
    std::string svg_path;
    std::string intervals_text = "0:1";
    double delta = 0.5;
    double window = 5.0;
    double range = 10.0;
    double c_step = 0.0;
};

void run_moments(const CommonOpts& o) {
    MeasureSpec spec = MeasureSpec::load(o.measure_path);
    const double T = parse_pi_value(o.T_text);
    const int N = o.N >= 0 ? o.N : default_moment_index(T, o.t_max);
    MomentSequence m = compute_moments(spec, T, N);
    std::ostringstream csv;
    csv << "n,a_n,provenance\n";
    for (int n = 0; n <= m.max_index(); ++n)
        csv << n << "," << fmt17(m.values[n]) << ","
            << to_string(m.provenance[n]) << "\n";
    emit(o.out_path, csv.str());
}

void run_recover(const CommonOpts& o) {
    MeasureSpec spec = MeasureSpec::load(o.measure_path);
    const double T = parse_pi_value(o.T_text);
    StepFunction h = recover_hamiltonian(spec, T, o.t_max);
    StepFunction g = h22(h);
    std::ostringstream csv;
    csv << "t_left,t_right,h11,h22\n";
    const double w = h.piece_width();
    for (int n = 0; n < h.piece_count(); ++n)
        csv << fmt17(n * w) << "," << fmt17((n + 1) * w) << ","
            << fmt17(h.values[n]) << "," << fmt17(g.values[n]) << "\n";
    emit(o.out_path, csv.str());
    if (!o.svg_path.empty()) {
        std::vector<svg::Curve> curves{svg::step_curve(h, "h11"),
                                       svg::step_curve(g, "h22")};
        emit(o.svg_path,
             svg::render_plot("recovered Hamiltonian", "t", "h", curves));
    }
}

void run_kernel(const CommonOpts& o) {
    MeasureSpec spec = MeasureSpec::load(o.measure_path);
    const double T = parse_pi_value(o.T_text);
    const double t = o.t_max;
    MomentSequence m = compute_moments(spec, T, default_moment_index(T, t));
    PiecewiseConstant f = kernel_transform(m, t);
    std::ostringstream csv;
    csv << "s_left,s_right,f_t\n";
    for (int i = 0; i < f.piece_count(); ++i)
        csv << fmt17(f.breakpoints[i]) << "," << fmt17(f.breakpoints[i + 1])
            << "," << fmt17(f.values[i]) << "\n";
    emit(o.out_path, csv.str());
    if (!o.svg_path.empty()) {
        std::ostringstream title;
        title << "kernel transform, t = " << t;
        emit(o.svg_path, svg::render_plot(title.str(), "s", "f_t",
                                          {svg::kernel_curve(f, "f_t")}));
    }
}

void run_opuc(const CommonOpts& o) {
    MeasureSpec spec = MeasureSpec::load(o.measure_path);
    const double T = parse_pi_value(o.T_text);
    const int N = o.N >= 0 ? o.N : default_moment_index(T, o.t_max);
    MomentSequence m = compute_moments(spec, T, N);
    const int order = m.max_index() - 1;
    SzegoData sz = szego_from_moments(m, order);
    NestedToeplitzSolve nested = solve_nested(m, order);
    std::ostringstream csv;
    csv << "n,phi1_sq,step_from_toeplitz,rel_dev\n";
    for (int n = 0; n <= order; ++n) {
        const double step = nested.step(n);
        const double dev = std::abs(sz.phi1_sq[n] - step) / std::abs(step);
        csv << n << "," << fmt17(sz.phi1_sq[n]) << "," << fmt17(step) << ","
            << fmt17(dev) << "\n";
    }
    emit(o.out_path, csv.str());
}

void run_converge(const CommonOpts& o) {
    MeasureSpec spec = MeasureSpec::load(o.measure_path);
    std::vector<double> Ts = parse_pi_list(o.Ts_text);
    if (o.c_step > 0.0) {
        // decay-class runs periodize at integer multiples of c
        for (double T : Ts) {
            const double m = T / o.c_step;
            if (std::abs(m - std::round(m)) > 1e-9)
                throw validation_error(
                    "with --c, every T must be an integer multiple of c");
        }
    }
    auto intervals = parse_intervals(o.intervals_text);
    double t_need = o.t_max;
    for (const auto& [a, b] : intervals)
        t_need = std::max(t_need, b);

    std::vector<HatFunction> hats;
    for (const auto& [a, b] : intervals)
        hats.push_back({a, 0.5 * (a + b), b});

    auto ref = match_reference(spec);
    ConvergenceReport rep = run_ladder(spec, Ts, t_need, intervals, hats,
                                       ref ? &*ref : nullptr);

    std::ostringstream csv;
    csv << "T,a,b,integral,reference,abs_dev\n";
    for (const auto& entry : rep.entries) {
        for (const auto& ir : entry.intervals) {
            csv << fmt17(entry.T) << "," << fmt17(ir.a) << "," << fmt17(ir.b)
                << "," << fmt17(ir.integral) << ",";
            if (ir.reference)
                csv << fmt17(*ir.reference);
            csv << ",";
            if (ir.abs_dev)
                csv << fmt17(*ir.abs_dev);
            csv << "\n";
        }
    }

    nlohmann::ordered_json j;
    j["measure"] = o.measure_path;
    j["eligibility"] = to_string(rep.label);
    j["note"] = rep.note;
    j["reference"] = ref ? ref->name : "";
    j["entries"] = nlohmann::ordered_json::array();
    for (const auto& entry : rep.entries) {
        nlohmann::ordered_json je;
        je["T"] = entry.T;
        if (!entry.ok()) {
            je["error"] = entry.error;
        } else {
            je["intervals"] = nlohmann::ordered_json::array();
            for (const auto& ir : entry.intervals) {
                nlohmann::ordered_json ji{{"a", ir.a},
                                          {"b", ir.b},
                                          {"integral", ir.integral}};
                if (ir.reference) {
                    ji["reference"] = *ir.reference;
                    ji["abs_dev"] = *ir.abs_dev;
                }
                je["intervals"].push_back(ji);
            }
            je["test_functions"] = nlohmann::ordered_json::array();
            for (const auto& hr : entry.hats) {
                nlohmann::ordered_json jh{{"a", hr.hat.a},
                                          {"peak", hr.hat.peak},
                                          {"b", hr.hat.b},
                                          {"integral", hr.integral}};
                if (hr.reference) {
                    jh["reference"] = *hr.reference;
                    jh["abs_dev"] = *hr.abs_dev;
                }
                je["test_functions"].push_back(jh);
            }
        }
        j["entries"].push_back(je);
    }
    if (!rep.interval_summaries.empty()) {
        j["summaries"] = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < rep.interval_summaries.size(); ++i) {
            const auto& s = rep.interval_summaries[i];
            j["summaries"].push_back(
                {{"a", intervals[i].first},
                 {"b", intervals[i].second},
                 {"monotone_nonincreasing", s.monotone_nonincreasing},
                 {"endpoint_improved", s.endpoint_improved}});
        }
    }

    if (o.out_path.empty()) {
        std::cout << csv.str() << "\n" << j.dump(2) << "\n";
    } else {
        emit(o.out_path, csv.str());
        std::string json_path = o.out_path;
        auto dot = json_path.find_last_of('.');
        if (dot != std::string::npos)
            json_path.resize(dot);
        json_path += ".json";
        emit(json_path, j.dump(2) + "\n");
    }

    if (!o.svg_path.empty()) {
        std::vector<svg::Curve> curves;
        for (const auto& entry : rep.entries) {
            if (!entry.ok())
                continue;
            StepFunction h = recover_hamiltonian(spec, entry.T, t_need);
            std::ostringstream label;
            label << "T = " << entry.T;
            curves.push_back(svg::step_curve(h, label.str()));
        }
        if (ref)
            curves.push_back(
                svg::sampled_curve(ref->h11, 0.0, t_need, 400, ref->name));
        emit(o.svg_path,
             svg::render_plot("periodization ladder", "t", "h11", curves));
    }
}

void run_check_pw(const CommonOpts& o) {
    MeasureSpec spec = MeasureSpec::load(o.measure_path);
    PwDiagnostic diag = pw_diagnostic(spec, o.range, o.delta, o.window);
    std::ostringstream out;
    out << "sup over a grid of mu(x, x+1) on [" << fmt17(-diag.range) << ", "
        << fmt17(diag.range) << "]: " << fmt17(diag.sup_unit_window_mass)
        << "\n";
    out << "disjoint (mu, delta)-intervals per window (delta = "
        << fmt17(diag.delta) << ", window = " << fmt17(diag.window) << "):\n";
    for (const auto& w : diag.windows)
        out << "  [" << fmt17(w.a) << ", " << fmt17(w.b) << "): " << w.count
            << "\n";
    out << "note: " << diag.note << "\n";
    std::cout << out.str();
    if (!o.out_path.empty()) {
        std::ostringstream csv;
        csv << "window_left,window_right,count\n";
        for (const auto& w : diag.windows)
            csv << fmt17(w.a) << "," << fmt17(w.b) << "," << w.count << "\n";
        emit(o.out_path, csv.str());
    }
}

int run_selftest() {
    int failures = 0;
    auto check = [&](bool ok, const std::string& name) {
        std::cout << (ok ? "ok   " : "FAIL ") << name << "\n";
        if (!ok)
            ++failures;
    };

    // Levinson vs dense factorization on random positive trigonometric
    // polynomial densities (exact moments at T = pi: the coefficients)
    std::mt19937 rng(20240601u);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    double worst = 0.0;
    for (int rep = 0; rep < 6; ++rep) {
        const int K = 3 + rep;
        std::vector<double> a(81, 0.0);
        double sum_abs = 0.0;
        for (int k = 1; k <= K; ++k) {
            a[k] = coef(rng);
            sum_abs += std::abs(a[k]);
        }
        a[0] = sum_abs + 0.25;
        MomentSequence m = MomentSequence::from_values(kPi, a);
        NestedToeplitzSolve nested = solve_nested(m, 80);
        for (int order : {5, 40, 80}) {
            DenseSolve dense = dense_oracle_solve(m, order);
            for (int i = 0; i <= order; ++i)
                worst = std::max(worst,
                                 std::abs(nested.solutions[order][i] - dense.x[i]) /
                                     (1.0 + std::abs(dense.x[i])));
        }
        SzegoData sz = szego_from_moments(m, 80);
        worst = std::max(worst, verify_step_identity(sz, nested).max_rel_dev);
    }
    check(worst < 1e-10, "levinson vs dense and step identity, max rel dev " +
                             fmt17(worst));

    // convolution residuals for the 1 + cos x measure
    MeasureSpec cosspec;
    cosspec.builtin = BuiltinDensity::make(BuiltinDensity::Kind::OnePlusCos);
    MomentSequence cm = compute_moments(cosspec, kPi, 12);
    double worst_conv = 0.0;
    for (double t : {0.75, 1.6, 3.0})
        worst_conv = std::max(
            worst_conv, convolution_residual(kernel_transform(cm, t), cm, 101));
    check(worst_conv < 1e-9,
          "convolution identity residual " + fmt17(worst_conv));

    // the two h11 routes coincide
    StepFunction ha = recover_from_moments(cm, 2.5);
    StepFunction hb = h11_from_kernel(cm, 2.5);
    double worst_route = 0.0;
    for (int n = 0; n < ha.piece_count(); ++n)
        worst_route = std::max(worst_route,
                               std::abs(ha.values[n] - hb.values[n]) /
                                   std::abs(ha.values[n]));
    check(worst_route < 1e-12, "h11 route agreement " + fmt17(worst_route));

    std::cout << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
    return failures == 0 ? 0 : 2;
}

} // namespace

double parse_pi_value(const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(),
                           [](unsigned char c) { return std::isspace(c); }),
            s.end());
    if (s == "pi")
        return kPi;
    if (s.size() > 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
        std::string head = s.substr(0, s.size() - 2);
        if (!head.empty() && head.back() == '*')
            head.pop_back();
        return parse_real(head) * kPi;
    }
    return parse_real(s);
}

int cli_main(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("periham");
    for (const auto& a : args)
        argv.push_back(a.c_str());
    return cli_main(static_cast<int>(argv.size()), argv.data());
}

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"recover diagonal canonical-system Hamiltonians from "
                 "periodized spectral measures"};
    app.footer(kMeasureGrammar);
    app.require_subcommand(1);

    CommonOpts o;
    auto add_measure = [&](CLI::App* cmd) {
        cmd->add_option("--measure", o.measure_path, "measure JSON file")
            ->required();
    };
    auto add_T = [&](CLI::App* cmd) {
        cmd->add_option("--T", o.T_text, "half-period (real or pi literal)")
            ->required();
    };

    CLI::App* moments = app.add_subcommand("moments", "trigonometric moments CSV");
    add_measure(moments);
    add_T(moments);
    moments->add_option("--N", o.N, "highest moment index");
    moments->add_option("--tmax", o.t_max, "derive N from this recovery horizon");
    moments->add_option("--out", o.out_path, "output CSV path (default stdout)");

    CLI::App* recover = app.add_subcommand("recover", "recovered h11/h22 CSV");
    add_measure(recover);
    add_T(recover);
    recover->add_option("--tmax", o.t_max, "recovery horizon");
    recover->add_option("--out", o.out_path, "output CSV path");
    recover->add_option("--svg", o.svg_path, "optional SVG step plot");

    CLI::App* kernel = app.add_subcommand("kernel", "kernel transform f_t CSV");
    add_measure(kernel);
    add_T(kernel);
    kernel->add_option("--tmax", o.t_max, "transform time t");
    kernel->add_option("--out", o.out_path, "output CSV path");
    kernel->add_option("--svg", o.svg_path, "optional SVG plot");

    CLI::App* opuc = app.add_subcommand(
        "opuc", "orthonormal polynomial step values against the Toeplitz route");
    add_measure(opuc);
    add_T(opuc);
    opuc->add_option("--N", o.N, "highest moment index");
    opuc->add_option("--tmax", o.t_max, "derive N from this recovery horizon");
    opuc->add_option("--out", o.out_path, "output CSV path");

    CLI::App* converge =
        app.add_subcommand("converge", "periodization ladder study");
    add_measure(converge);
    converge->add_option("--Ts", o.Ts_text, "comma separated ladder of T values")
        ->required();
    converge->add_option("--tmax", o.t_max, "recovery horizon");
    converge->add_option("--intervals", o.intervals_text,
                         "comma separated a:b integration intervals");
    converge->add_option("--c", o.c_step,
                         "decay-class period step; enforces Ts in c*N");
    converge->add_option("--out", o.out_path, "output CSV path");
    converge->add_option("--svg", o.svg_path, "optional SVG ladder overlay");

    CLI::App* checkpw =
        app.add_subcommand("check-pw", "finite-range sampling-measure diagnostic");
    add_measure(checkpw);
    checkpw->add_option("--range", o.range, "scan [-range, range]");
    checkpw->add_option("--delta", o.delta, "interval length/mass threshold");
    checkpw->add_option("--window", o.window, "window length for the counts");
    checkpw->add_option("--out", o.out_path, "optional CSV of window counts");

    CLI::App* selftest =
        app.add_subcommand("selftest", "internal oracle cross-checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (moments->parsed())
            run_moments(o);
        else if (recover->parsed())
            run_recover(o);
        else if (kernel->parsed())
            run_kernel(o);
        else if (opuc->parsed())
            run_opuc(o);
        else if (converge->parsed())
            run_converge(o);
        else if (checkpw->parsed())
            run_check_pw(o);
        else if (selftest->parsed())
            return run_selftest();
    } catch (const breakdown_error& e) {
        std::cerr << "numerical breakdown: " << e.what() << "\n";
        return 2;
    } catch (const quadrature_error& e) {
        std::cerr << "numerical breakdown: " << e.what() << "\n";
        return 2;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace periham
