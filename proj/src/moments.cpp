#include "periham/moments.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "periham/errors.hpp"
#include "periham/quadrature.hpp"

namespace periham {

namespace {

constexpr double kPi = std::numbers::pi;

double sinc(double z) {
    if (std::abs(z) < 1e-8)
        return 1.0 - z * z / 6.0;
    return std::sin(z) / z;
}

// integral_{-T}^{T} rho(x) cos(n pi x / T) dx for builtins with a closed
// form (n = 0 gives the plain mass).
double closed_form_density_integral(const BuiltinDensity& b, double T, int n) {
    switch (b.kind) {
    case BuiltinDensity::Kind::Constant:
        // cos(n pi x / T) integrates to zero over the full period
        return n == 0 ? b.params[0] * 2.0 * T : 0.0;
    case BuiltinDensity::Kind::OnePlusCos: {
        if (n == 0)
            return 2.0 * T + 2.0 * std::sin(T);
        const double npi = n * kPi;
        // int cos(ax) dx = 2T sinc(aT); int cos(x)cos(ax) dx =
        // T (sinc((a-1)T) + sinc((a+1)T)) with aT = n pi
        return 2.0 * T * sinc(npi) +
               T * (sinc(npi - T) + sinc(npi + T));
    }
    default:
        throw validation_error("builtin has no closed-form moments");
    }
}

} // namespace

const char* to_string(Provenance p) {
    return p == Provenance::ClosedForm ? "closed-form" : "quadrature";
}

MomentSequence MomentSequence::from_values(double T, std::vector<double> values,
                                           Provenance p) {
    if (!(T > 0.0))
        throw validation_error("half-period T must be positive");
    if (values.empty())
        throw validation_error("moment sequence must contain a_0");
    MomentSequence m;
    m.T = T;
    m.provenance.assign(values.size(), p);
    m.values = std::move(values);
    return m;
}

MomentSequence compute_moments(const MeasureSpec& spec, double T,
                               int max_index) {
    if (!(T > 0.0))
        throw validation_error("half-period T must be positive");
    if (max_index < 0)
        throw validation_error("moment index must be non-negative");

    ValidationReport rep = validate_even_positive(spec, T);
    if (!rep.pass)
        throw validation_error("measure failed validation: " +
                               format_failures(rep));
    for (const auto& a : spec.atoms) {
        if (std::abs(std::abs(a.x) - T) <= 1e-12 * std::max(1.0, T)) {
            std::ostringstream os;
            os << "atom at x = " << a.x
               << " sits on the periodization boundary |x| = T";
            throw validation_error(os.str());
        }
    }

    MomentSequence m;
    m.T = T;
    m.values.resize(max_index + 1);
    m.provenance.resize(max_index + 1);

    const bool closed = !spec.has_density() ||
                        (spec.builtin && spec.builtin->has_closed_form_moments());
    for (int n = 0; n <= max_index; ++n) {
        double atom_part = 0.0;
        for (const auto& a : spec.atoms) {
            if (std::abs(a.x) >= T)
                continue;
            atom_part += n == 0 ? a.mass : a.mass * std::cos(n * kPi * a.x / T);
        }
        double density_part = 0.0;
        if (spec.has_density()) {
            if (closed) {
                density_part = closed_form_density_integral(*spec.builtin, T, n);
            } else {
                const double alpha = n * kPi / T;
                density_part = quad::integrate(
                    [&](double x) {
                        return spec.density_at(x) * std::cos(alpha * x);
                    },
                    -T, T, n);
            }
        }
        m.values[n] = (atom_part + density_part) / (n == 0 ? 2.0 * T : T);
        m.provenance[n] =
            closed ? Provenance::ClosedForm : Provenance::Quadrature;
    }

    if (!(m.values[0] > 0.0))
        throw validation_error("measure has no mass on [-T, T]");
    for (int n = 1; n <= max_index; ++n) {
        if (std::abs(m.values[n]) > 2.0 * m.values[0] * (1.0 + 1e-9)) {
            std::ostringstream os;
            os << "moment bound violated: |a_" << n << "| = "
               << std::abs(m.values[n]) << " exceeds 2 a_0 = "
               << 2.0 * m.values[0];
            throw quadrature_error(os.str());
        }
    }
    return m;
}

} // namespace periham
