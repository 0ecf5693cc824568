#include "periham/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "periham/errors.hpp"

namespace periham::quad {

namespace {

GaussRule compute_rule(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15)
                break;
        }
        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    return rule;
}

double apply(const GaussRule& g, const std::function<double(double)>& f,
             double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
        s += g.weights[i] * f(mid + half * g.nodes[i]);
    return s * half;
}

struct Panel {
    double a, b;
    double fine; // GL over the two halves; the value actually summed
    double err;  // |fine - coarse|
    int depth;
};

// max-heap on err; ties pop the leftmost panel first
bool heap_less(const Panel& x, const Panel& y) {
    if (x.err != y.err)
        return x.err < y.err;
    return x.a > y.a;
}

constexpr double kRelTol = 1e-11;
constexpr int kMaxDepth = 20;
constexpr std::size_t kMaxPanels = 200000;

} // namespace

const GaussRule& gauss_legendre(int npoints) {
    static std::map<int, GaussRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(npoints);
    if (it == cache.end())
        it = cache.emplace(npoints, compute_rule(npoints)).first;
    return it->second;
}

double fixed_panel_integral(const std::function<double(double)>& f, double a,
                            double b, int panels, int order) {
    const GaussRule& g = gauss_legendre(order);
    double s = 0.0;
    for (int i = 0; i < panels; ++i) {
        double l = a + (b - a) * i / panels;
        double r = a + (b - a) * (i + 1) / panels;
        s += apply(g, f, l, r);
    }
    return s;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 int oscillation_index) {
    if (a == b)
        return 0.0;
    if (a > b)
        return -integrate(f, b, a, oscillation_index);

    const GaussRule& g = gauss_legendre(12);
    auto make_panel = [&](double l, double r, double coarse, int depth) {
        const double mid = 0.5 * (l + r);
        const double fine = apply(g, f, l, mid) + apply(g, f, mid, r);
        return Panel{l, r, fine, std::abs(fine - coarse), depth};
    };

    const int initial = std::max(64, 8 * (oscillation_index + 1));
    std::vector<Panel> heap;
    heap.reserve(2 * initial);
    double total = 0.0;
    double total_err = 0.0;
    for (int i = 0; i < initial; ++i) {
        double l = a + (b - a) * i / initial;
        double r = a + (b - a) * (i + 1) / initial;
        Panel p = make_panel(l, r, apply(g, f, l, r), 0);
        total += p.fine;
        total_err += p.err;
        heap.push_back(p);
    }
    std::make_heap(heap.begin(), heap.end(), heap_less);

    while (total_err > kRelTol * (1.0 + std::abs(total))) {
        std::pop_heap(heap.begin(), heap.end(), heap_less);
        Panel worst = heap.back();
        heap.pop_back();
        if (worst.depth >= kMaxDepth)
            throw quadrature_error(
                "quadrature did not converge after 20 refinement levels");
        if (heap.size() + 2 > kMaxPanels)
            throw quadrature_error("quadrature panel budget exceeded");
        const double mid = 0.5 * (worst.a + worst.b);
        Panel left = make_panel(worst.a, mid, apply(g, f, worst.a, mid),
                                worst.depth + 1);
        Panel right = make_panel(mid, worst.b, apply(g, f, mid, worst.b),
                                 worst.depth + 1);
        total += left.fine + right.fine - worst.fine;
        total_err += left.err + right.err - worst.err;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), heap_less);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), heap_less);
    }

    // fixed reduction order: ascending panel position
    std::sort(heap.begin(), heap.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });
    double result = 0.0;
    for (const Panel& p : heap)
        result += p.fine;
    return result;
}

} // namespace periham::quad
