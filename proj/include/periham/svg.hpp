#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "periham/recovery.hpp"

namespace periham::svg {

struct Curve {
    std::vector<std::pair<double, double>> points;
    std::string label;
};

// Plain SVG 1.1 line plot, 800x500 viewport, axes with tick labels and a
// small legend. Colors cycle through a fixed palette.
std::string render_plot(const std::string& title, const std::string& xlabel,
                        const std::string& ylabel,
                        const std::vector<Curve>& curves);

// Breakpoint-doubled polyline tracing a step function on [0, t_max].
Curve step_curve(const StepFunction& h, const std::string& label);

// Same for a kernel transform on [-t, t], closed to zero at the support
// edges.
Curve kernel_curve(const PiecewiseConstant& f, const std::string& label);

// Smooth function sampled on a uniform grid.
Curve sampled_curve(const std::function<double(double)>& f, double a, double b,
                    int samples, const std::string& label);

} // namespace periham::svg
