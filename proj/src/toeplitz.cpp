#include "periham/toeplitz.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include <Eigen/Dense>

#include "periham/errors.hpp"

namespace periham {

namespace {

std::vector<double> toeplitz_row(const MomentSequence& m) {
    std::vector<double> c(m.values.size());
    c[0] = m.values[0];
    for (std::size_t k = 1; k < c.size(); ++k)
        c[k] = 0.5 * m.values[k];
    return c;
}

[[noreturn]] void throw_breakdown(int order, double variance, double a0) {
    std::ostringstream os;
    os << "Toeplitz family is not positive definite at order " << order
       << " (prediction-error variance " << variance << ", a_0 = " << a0
       << ")";
    throw breakdown_error(os.str(), order);
}

} // namespace

NestedToeplitzSolve solve_nested(const MomentSequence& moments, int max_order) {
    if (max_order < 0)
        throw validation_error("max_order must be non-negative");
    if (max_order + 1 > static_cast<int>(moments.values.size()))
        throw validation_error("solve_nested needs max_order + 1 moments");

    const std::vector<double> c = toeplitz_row(moments);
    const double a0 = moments.values[0];
    const double breakdown_tol = 1e-12 * a0;
    const double condition_tol = 1e-8 * a0;

    NestedToeplitzSolve out;
    out.solutions.reserve(max_order + 1);
    out.sums.reserve(max_order + 1);
    out.variances.reserve(max_order + 1);
    out.reflections.reserve(max_order);

    if (c[0] <= breakdown_tol)
        throw_breakdown(0, c[0], a0);

    std::vector<double> x{1.0 / c[0]};     // J_m x = 1
    std::vector<double> y;                 // J_{m-1} y = -(c_1..c_m)
    double variance = c[0];
    out.solutions.push_back(x);
    out.sums.push_back(x[0]);
    out.variances.push_back(variance);

    for (int m = 0; m < max_order; ++m) {
        // advance the prediction problem to order m+1
        double acc = c[m + 1];
        for (int i = 1; i <= m; ++i)
            acc += c[m + 1 - i] * y[i - 1];
        const double k = -acc / variance;
        out.reflections.push_back(k);
        for (int i = 0, j = m - 1; i < j; ++i, --j) {
            const double yi = y[i], yj = y[j];
            y[i] = yi + k * yj;
            y[j] = yj + k * yi;
        }
        if (m % 2 == 1)
            y[m / 2] += k * y[m / 2];
        y.push_back(k);
        variance *= 1.0 - k * k;
        if (variance <= breakdown_tol)
            throw_breakdown(m + 1, variance, a0);
        if (variance <= condition_tol)
            out.well_conditioned = false;

        // extend the all-ones solution using the reversed prediction vector
        double dot = 0.0;
        for (int i = 1; i <= m + 1; ++i)
            dot += c[m + 2 - i] * x[i - 1];
        const double mu = (1.0 - dot) / variance;
        for (int i = 0; i <= m; ++i)
            x[i] += mu * y[m - i];
        x.push_back(mu);

        double sum = 0.0;
        for (double v : x)
            sum += v;
        out.solutions.push_back(x);
        out.sums.push_back(sum);
        out.variances.push_back(variance);
    }
    return out;
}

DenseSolve dense_oracle_solve(const MomentSequence& moments, int order) {
    if (order < 0)
        throw validation_error("order must be non-negative");
    if (order + 1 > static_cast<int>(moments.values.size()))
        throw validation_error("dense_oracle_solve needs order + 1 moments");

    const std::vector<double> c = toeplitz_row(moments);
    const int n = order + 1;
    Eigen::MatrixXd J(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            J(i, j) = c[std::abs(i - j)];

    Eigen::LLT<Eigen::MatrixXd> llt(J);
    if (llt.info() != Eigen::Success)
        throw breakdown_error("dense factorization failed: matrix is not "
                              "positive definite at order " +
                                  std::to_string(order),
                              order);
    Eigen::VectorXd x = llt.solve(Eigen::VectorXd::Ones(n));

    DenseSolve out;
    out.x.assign(x.data(), x.data() + n);
    for (double v : out.x)
        out.sum += v;
    return out;
}

} // namespace periham
