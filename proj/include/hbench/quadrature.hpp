#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hbench {

namespace detail {

template <class F>
double adaptive_simpson_rec(const F& f, double a, double b, double fa,
                            double fm, double fb, double whole, double tol,
                            int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double h = b - a;
    const double left = (h / 12.0) * (fa + 4.0 * flm + fm);
    const double right = (h / 12.0) * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol,
                                depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol,
                                depth - 1);
}

} // namespace detail

/// Adaptive Simpson quadrature with an absolute tolerance.
///
/// `min_panels` forces an initial uniform subdivision before the adaptive
/// error estimate is trusted; oscillatory integrands need it so the first
/// coarse estimates do not alias.
template <class F>
double integrate(const F& f, double a, double b, double abs_tol = 1e-9,
                 int min_panels = 8, int max_depth = 48) {
    if (!(b > a)) {
        if (a == b) return 0.0;
        throw std::invalid_argument("integrate: requires b > a");
    }
    if (min_panels < 1) min_panels = 1;
    const double h = (b - a) / min_panels;
    const double panel_tol = abs_tol / min_panels;
    double total = 0.0;
    for (int i = 0; i < min_panels; ++i) {
        const double x0 = a + i * h;
        const double x1 = (i + 1 == min_panels) ? b : x0 + h;
        const double xm = 0.5 * (x0 + x1);
        const double f0 = f(x0), fm = f(xm), f1 = f(x1);
        const double whole = ((x1 - x0) / 6.0) * (f0 + 4.0 * fm + f1);
        total += detail::adaptive_simpson_rec(f, x0, x1, f0, fm, f1, whole,
                                              panel_tol, max_depth);
    }
    return total;
}

/// Adaptive Simpson with a relative tolerance: a coarse fixed-grid pass
/// estimates the magnitude of the integral, which then sets the absolute
/// tolerance of the adaptive pass.
template <class F>
double integrate_rel(const F& f, double a, double b, double rel_tol = 1e-10,
                     double abs_floor = 1e-300, int min_panels = 64) {
    double coarse = 0.0;
    const int n = 2 * min_panels;
    const double h = (b - a) / n;
    for (int i = 0; i <= n; ++i) {
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        coarse += w * std::abs(f(a + i * h));
    }
    coarse *= h / 3.0;
    const double tol = std::max(abs_floor, rel_tol * coarse);
    return integrate(f, a, b, tol, min_panels);
}

/// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton iteration
/// on the Legendre recurrence. Used by the quadrature oracles in tests.
inline void gauss_legendre(int n, std::vector<double>& nodes,
                           std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[n - 1 - i] = weights[i];
    }
}

/// Gauss-Legendre quadrature of f on [a, b] with n nodes.
template <class F>
double integrate_gl(const F& f, double a, double b, int n = 64) {
    std::vector<double> x, w;
    gauss_legendre(n, x, w);
    const double c = 0.5 * (b - a), d = 0.5 * (b + a);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += w[i] * f(c * x[i] + d);
    return c * s;
}

} // namespace hbench
