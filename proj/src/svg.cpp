#include "periham/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>

namespace periham::svg {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                          "#9467bd", "#ff7f0e", "#8c564b"};
constexpr int kPaletteSize = 6;

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kMarginL = 70.0;
constexpr double kMarginR = 18.0;
constexpr double kMarginT = 30.0;
constexpr double kMarginB = 48.0;

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        default:  out += c;
        }
    }
    return out;
}

} // namespace

Curve step_curve(const StepFunction& h, const std::string& label) {
    Curve c;
    c.label = label;
    const double w = h.piece_width();
    for (int n = 0; n < h.piece_count(); ++n) {
        c.points.emplace_back(n * w, h.values[n]);
        c.points.emplace_back((n + 1) * w, h.values[n]);
    }
    return c;
}

Curve kernel_curve(const PiecewiseConstant& f, const std::string& label) {
    Curve c;
    c.label = label;
    c.points.emplace_back(f.breakpoints.front(), 0.0);
    for (int i = 0; i < f.piece_count(); ++i) {
        c.points.emplace_back(f.breakpoints[i], f.values[i]);
        c.points.emplace_back(f.breakpoints[i + 1], f.values[i]);
    }
    c.points.emplace_back(f.breakpoints.back(), 0.0);
    return c;
}

Curve sampled_curve(const std::function<double(double)>& f, double a, double b,
                    int samples, const std::string& label) {
    Curve c;
    c.label = label;
    for (int i = 0; i <= samples; ++i) {
        const double x = a + (b - a) * i / samples;
        c.points.emplace_back(x, f(x));
    }
    return c;
}

std::string render_plot(const std::string& title, const std::string& xlabel,
                        const std::string& ylabel,
                        const std::vector<Curve>& curves) {
    double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
    double ylo = 0.0, yhi = -std::numeric_limits<double>::infinity();
    for (const auto& c : curves) {
        for (const auto& [x, y] : c.points) {
            xlo = std::min(xlo, x);
            xhi = std::max(xhi, x);
            ylo = std::min(ylo, y);
            yhi = std::max(yhi, y);
        }
    }
    if (!(xhi > xlo)) {
        xlo = 0.0;
        xhi = 1.0;
    }
    if (!(yhi > ylo))
        yhi = ylo + 1.0;
    yhi += 0.05 * (yhi - ylo);

    const double px0 = kMarginL, px1 = kWidth - kMarginR;
    const double py0 = kHeight - kMarginB, py1 = kMarginT;
    auto mapx = [&](double x) {
        return px0 + (x - xlo) / (xhi - xlo) * (px1 - px0);
    };
    auto mapy = [&](double y) {
        return py0 + (y - ylo) / (yhi - ylo) * (py1 - py0);
    };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
        << "width=\"800\" height=\"500\" viewBox=\"0 0 800 500\">\n"
        << "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";

    // frame and ticks
    out << "<g stroke=\"#444\" stroke-width=\"1\" fill=\"none\">\n"
        << "<path d=\"M " << num(px0) << " " << num(py1) << " L " << num(px0)
        << " " << num(py0) << " L " << num(px1) << " " << num(py0)
        << "\"/>\n</g>\n";
    out << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#222\">\n";
    const int ticks = 5;
    for (int i = 0; i <= ticks; ++i) {
        const double xv = xlo + (xhi - xlo) * i / ticks;
        const double yv = ylo + (yhi - ylo) * i / ticks;
        out << "<line x1=\"" << num(mapx(xv)) << "\" y1=\"" << num(py0)
            << "\" x2=\"" << num(mapx(xv)) << "\" y2=\"" << num(py0 + 5)
            << "\" stroke=\"#444\"/>\n";
        out << "<text x=\"" << num(mapx(xv)) << "\" y=\"" << num(py0 + 18)
            << "\" text-anchor=\"middle\">" << tick_label(xv) << "</text>\n";
        out << "<line x1=\"" << num(px0 - 5) << "\" y1=\"" << num(mapy(yv))
            << "\" x2=\"" << num(px0) << "\" y2=\"" << num(mapy(yv))
            << "\" stroke=\"#444\"/>\n";
        out << "<text x=\"" << num(px0 - 8) << "\" y=\"" << num(mapy(yv) + 4)
            << "\" text-anchor=\"end\">" << tick_label(yv) << "</text>\n";
    }
    out << "<text x=\"" << num(0.5 * (px0 + px1)) << "\" y=\""
        << num(kHeight - 10) << "\" text-anchor=\"middle\">" << escape(xlabel)
        << "</text>\n";
    out << "<text x=\"16\" y=\"" << num(0.5 * (py0 + py1))
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << num(0.5 * (py0 + py1)) << ")\">" << escape(ylabel) << "</text>\n";
    out << "<text x=\"" << num(0.5 * kWidth) << "\" y=\"18\" "
        << "text-anchor=\"middle\" font-size=\"14\">" << escape(title)
        << "</text>\n</g>\n";

    for (std::size_t c = 0; c < curves.size(); ++c) {
        const auto& cv = curves[c];
        if (cv.points.empty())
            continue;
        out << "<path fill=\"none\" stroke=\"" << kPalette[c % kPaletteSize]
            << "\" stroke-width=\"1.5\" d=\"";
        for (std::size_t i = 0; i < cv.points.size(); ++i) {
            out << (i == 0 ? "M " : " L ") << num(mapx(cv.points[i].first))
                << " " << num(mapy(cv.points[i].second));
        }
        out << "\"/>\n";
    }

    // legend
    out << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#222\">\n";
    for (std::size_t c = 0; c < curves.size(); ++c) {
        if (curves[c].label.empty())
            continue;
        const double y = kMarginT + 16.0 * c + 8.0;
        out << "<line x1=\"" << num(px1 - 130) << "\" y1=\"" << num(y)
            << "\" x2=\"" << num(px1 - 105) << "\" y2=\"" << num(y)
            << "\" stroke=\"" << kPalette[c % kPaletteSize]
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << num(px1 - 100) << "\" y=\"" << num(y + 4)
            << "\">" << escape(curves[c].label) << "</text>\n";
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

} // namespace periham::svg
