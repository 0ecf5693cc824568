#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace periham {

// Invalid input: malformed expressions or measure files, non-even or
// negative measures, bad argument combinations. CLI exit code 1.
class validation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class parse_error : public validation_error {
public:
    parse_error(const std::string& what, std::size_t offset)
        : validation_error(what + " (byte " + std::to_string(offset) + ")"),
          offset_(offset) {}

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

// Domain violation while evaluating a density (division by zero, sqrt of a
// negative value, density below the negativity tolerance).
class eval_error : public validation_error {
public:
    using validation_error::validation_error;
};

// Numerical failure: the Toeplitz family stopped being positive definite
// at some order. CLI exit code 2. `t` is the time the failing order maps
// to, when known (NaN otherwise).
class breakdown_error : public std::runtime_error {
public:
    breakdown_error(const std::string& what, int order,
                    double t = std::nan(""))
        : std::runtime_error(what), order_(order), t_(t) {}

    int order() const { return order_; }
    double t() const { return t_; }

private:
    int order_;
    double t_;
};

// Adaptive quadrature ran out of refinement levels. CLI exit code 2.
class quadrature_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace periham
