#pragma once

#include <vector>

#include "periham/measure.hpp"
#include "periham/moments.hpp"
#include "periham/toeplitz.hpp"

namespace periham {

// Right-closed step function on a uniform grid: value v_n on the piece
// (n*w, (n+1)*w] with w = pi / (2T); evaluation at 0 returns v_0.
struct StepFunction {
    double T = 0.0;
    std::vector<double> values;

    double piece_width() const;
    double t_max() const;
    int piece_count() const { return static_cast<int>(values.size()); }

    double operator()(double t) const;
    double integrate(double a, double b) const;
};

// Recovered h11 of the periodized measure: v_n = S_n - S_{n-1} from the
// nested Toeplitz solve, pieces of width pi / (2T), n = 0..ceil(2T tmax/pi).
StepFunction recover_hamiltonian(const MeasureSpec& spec, double T,
                                 double t_max);
StepFunction recover_from_moments(const MomentSequence& moments, double t_max);

// h22 = 1 / h11 pointwise on the same breakpoints (det-normalization).
StepFunction h22(const StepFunction& h11);

// The kernel transform f_t: an even piecewise-constant function supported
// on [-t, t]. `values` carry the function; `raw` keeps the Toeplitz
// solution components (values * sqrt(2 pi)), which the convolution check
// consumes directly.
struct PiecewiseConstant {
    double t = 0.0;
    double T = 0.0;
    std::vector<double> breakpoints; // size m+1, from -t to t
    std::vector<double> values;      // size m; zero-length pieces allowed
    std::vector<double> raw;

    int piece_count() const { return static_cast<int>(values.size()); }
    double value(double s) const; // 0 outside [-t, t]
    double integral() const;

private:
    friend PiecewiseConstant kernel_transform(const MomentSequence&, double);
    double raw_value(double s) const;
    friend double convolution_residual(const PiecewiseConstant&,
                                       const MomentSequence&, int);
};

// Builds f_t for the 2T-periodization. Natively a period-2pi construction:
// with n minimal such that t' <= (n+1)/2 for the scaled time t' = tT/pi,
// the intervals I_k (length 2t'-n, centers k - n/2) carry the components
// of J_n^{-1} 1 / sqrt(2 pi) and the complementary intervals carry those of
// J_{n-1}^{-1} 1 / sqrt(2 pi). For general T the time axis contracts by
// pi/T while the amplitude is unchanged; the convolution identity below
// pins both factors and is verified numerically in the tests.
PiecewiseConstant kernel_transform(const MomentSequence& moments, double t);

// K_0^t(0) = (1 / sqrt(2 pi)) * integral of f_t.
double kernel_value_at_zero(const PiecewiseConstant& f);

// Max over sample points of |(f_t * mu_hat)(x) - 1| where mu_hat is the
// Fourier transform of the periodic measure, a weighted Dirac comb with
// spacing pi/T. Samples sit at half-piece offsets so breakpoints are never
// hit. Zero to rounding for every f_t built by kernel_transform.
double convolution_residual(const PiecewiseConstant& f,
                            const MomentSequence& moments, int samples);

// Second route to h11: differentiates the exact piecewise-linear map
// t -> integral(f_t) across each piece. Agrees with recover_from_moments
// up to rounding; the comparison exercises the interval bookkeeping.
StepFunction h11_from_kernel(const MomentSequence& moments, double t_max);

} // namespace periham
