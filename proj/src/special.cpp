#include "hbench/special.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hbench::special {

namespace {

// Ai(0) = 3^{-2/3}/Gamma(2/3), Ai'(0) = -3^{-1/3}/Gamma(1/3)
const double kAi0 = std::pow(3.0, -2.0 / 3.0) / std::tgamma(2.0 / 3.0);
const double kAip0 = -std::pow(3.0, -1.0 / 3.0) / std::tgamma(1.0 / 3.0);

constexpr double kSeriesLo = -7.5;
constexpr double kSeriesHi = 5.0;
constexpr double kDomainLo = -15.0;
constexpr double kDomainHi = 10.0;

// Maclaurin solutions of w'' = x w:
//   f(x) = sum 3^k (1/3)_k x^{3k} / (3k)!   with f(0)=1, f'(0)=0
//   g(x) = sum 3^k (2/3)_k x^{3k+1}/(3k+1)! with g(0)=0, g'(0)=1
// Term ratios: t_{k+1}/t_k = x^3/((3k+2)(3k+3)) for f,
//              x^3/((3k+3)(3k+4)) for g.
void maclaurin_fg(double x, double& f, double& g, double& fp, double& gp) {
    const double x3 = x * x * x;
    double tf = 1.0, tg = x;
    f = tf;
    g = tg;
    // derivatives: term-wise d/dx of x^{3k} is 3k x^{3k-1} etc.
    fp = 0.0;
    gp = 1.0;
    double tfp = 0.0, tgp = 1.0;
    for (int k = 0; k < 200; ++k) {
        tf *= x3 / ((3 * k + 2) * (3 * k + 3));
        tg *= x3 / ((3 * k + 3) * (3 * k + 4));
        f += tf;
        g += tg;
        // d/dx terms: f-term ~ x^{3k+3} -> (3k+3) x^{3k+2};
        // carry them directly from the value terms
        tfp = tf * (3 * k + 3) / x; // valid for x != 0
        tgp = tg * (3 * k + 4) / x;
        if (x != 0.0) {
            fp += tfp;
            gp += tgp;
        }
        if (std::abs(tf) < 1e-18 && std::abs(tg) < 1e-18) break;
    }
}

// u_k coefficients of the asymptotic expansions,
// u_0 = 1, u_k = u_{k-1} (6k-1)(6k-5) / (72 k);
// v_k = u_k (6k+1)/(1-6k).
double asymptotic_pos(double x, bool derivative) {
    const double zeta = 2.0 / 3.0 * std::pow(x, 1.5);
    double u = 1.0, term = 1.0, sum = 1.0, prev = 1.0;
    for (int k = 1; k <= 60; ++k) {
        u *= (6.0 * k - 1.0) * (6.0 * k - 5.0) / (72.0 * k);
        double c = u;
        if (derivative) c *= (6.0 * k + 1.0) / (1.0 - 6.0 * k);
        term = c / std::pow(zeta, k);
        if (std::abs(term) > std::abs(prev)) break; // optimal truncation
        sum += (k % 2 ? -term : term);
        prev = term;
    }
    const double amp = std::exp(-zeta) / (2.0 * std::sqrt(M_PI));
    if (derivative) {
        return -amp * std::pow(x, 0.25) * sum;
    }
    return amp / std::pow(x, 0.25) * sum;
}

double asymptotic_neg(double x, bool derivative) {
    const double z = -x;
    const double zeta = 2.0 / 3.0 * std::pow(z, 1.5);
    // Even/odd splits of the u (or v) sequence with optimal truncation.
    double u = 1.0;
    double p_sum = 1.0, q_sum = 0.0;
    double prev = 1.0;
    int sign_p = 1, sign_q = 1;
    for (int k = 1; k <= 120; ++k) {
        u *= (6.0 * k - 1.0) * (6.0 * k - 5.0) / (72.0 * k);
        double c = u;
        if (derivative) c *= (6.0 * k + 1.0) / (1.0 - 6.0 * k);
        const double term = c / std::pow(zeta, k);
        if (std::abs(term) > std::abs(prev)) break;
        if (k % 2 == 1) {
            q_sum += sign_q * term;
            sign_q = -sign_q;
        } else {
            sign_p = -sign_p;
            p_sum += sign_p * term;
        }
        prev = term;
    }
    const double phase = zeta - 0.25 * M_PI;
    if (derivative) {
        // Ai'(-z) ~ -pi^{-1/2} z^{1/4} [cos(phase) Q(zeta) - sin(phase) P]
        return -std::pow(z, 0.25) / std::sqrt(M_PI) *
               (std::cos(phase) * q_sum - std::sin(phase) * p_sum);
    }
    return (std::cos(phase) * p_sum + std::sin(phase) * q_sum) /
           (std::sqrt(M_PI) * std::pow(z, 0.25));
}

void check_domain(double x) {
    if (x < kDomainLo || x > kDomainHi) {
        throw std::domain_error("airy: x = " + std::to_string(x) +
                                " outside supported range [-15, 10]");
    }
}

} // namespace

double airy_ai(double x) {
    check_domain(x);
    if (x >= kSeriesLo && x <= kSeriesHi) {
        double f, g, fp, gp;
        maclaurin_fg(x, f, g, fp, gp);
        return kAi0 * f + kAip0 * g;
    }
    return x > 0 ? asymptotic_pos(x, false) : asymptotic_neg(x, false);
}

double airy_ai_prime(double x) {
    check_domain(x);
    if (x >= kSeriesLo && x <= kSeriesHi) {
        double f, g, fp, gp;
        maclaurin_fg(x, f, g, fp, gp);
        return kAi0 * fp + kAip0 * gp;
    }
    return x > 0 ? asymptotic_pos(x, true) : asymptotic_neg(x, true);
}

double airy_first_zero() {
    double lo = -3.0, hi = -2.0;
    double flo = airy_ai(lo);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = airy_ai(mid);
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-14) break;
    }
    return 0.5 * (lo + hi);
}

} // namespace hbench::special
