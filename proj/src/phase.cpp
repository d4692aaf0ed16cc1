#include "hbench/phase.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "hbench/quadrature.hpp"
#include "hbench/special.hpp"

namespace hbench::phase {

PhaseState::PhaseState(VectorXd coeffs) : c_(std::move(coeffs)) {
    if (c_.size() < 1) throw std::invalid_argument("PhaseState: empty");
    for (Eigen::Index m = 0; m < c_.size(); ++m) {
        if (!(c_[m] >= -1e-12)) {
            throw std::invalid_argument(
                "PhaseState: coefficients must be non-negative");
        }
    }
    if (std::abs(c_.squaredNorm() - 1.0) > 1e-12) {
        throw std::invalid_argument("PhaseState: not normalized");
    }
}

double phase_bayes_cost(const PhaseState& state) {
    const VectorXd& c = state.coeffs();
    const Eigen::Index n1 = c.size();
    double cost = 2.0 * c.squaredNorm();
    for (Eigen::Index m = 0; m + 1 < n1; ++m) cost -= 2.0 * c[m] * c[m + 1];
    return cost;
}

Eigen::MatrixXd cost_tridiagonal(int n) {
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n + 1, n + 1);
    for (int i = 0; i <= n; ++i) {
        t(i, i) = 2.0;
        if (i + 1 <= n) {
            t(i, i + 1) = -1.0;
            t(i + 1, i) = -1.0;
        }
    }
    return t;
}

std::pair<PhaseState, double> optimal_sin_state(int n) {
    if (n < 1) throw std::invalid_argument("optimal_sin_state: N >= 1");
    VectorXd c(n + 1);
    const double norm = std::sqrt(2.0 / (n + 2));
    for (int m = 0; m <= n; ++m) {
        c[m] = norm * std::sin((m + 1) * M_PI / (n + 2));
    }
    c /= c.norm(); // round-off polish; analytic norm is already 1
    const double cost = 2.0 * (1.0 - std::cos(M_PI / (n + 2)));
    return {PhaseState(c), cost};
}

double dft_povm_cost(const PhaseState& state, double abs_tol) {
    const VectorXd& c = state.coeffs();
    const int n = state.n();
    const int outcomes = n + 1;
    const auto integrand = [&](double theta) {
        double total = 0.0;
        for (int j = 0; j < outcomes; ++j) {
            const double phi_j = 2.0 * M_PI * j / outcomes;
            std::complex<double> amp = 0.0;
            for (int m = 0; m <= n; ++m) {
                amp += c[m] * std::polar(1.0, m * (theta - phi_j));
            }
            const double p = std::norm(amp) / outcomes;
            const double half = 0.5 * (phi_j - theta);
            total += p * 4.0 * std::sin(half) * std::sin(half);
        }
        return total / (2.0 * M_PI);
    };
    // trig polynomial of degree <= 2N+2: pre-split so the adaptive error
    // estimate never sees an aliased coarse panel
    return integrate(integrand, 0.0, 2.0 * M_PI, abs_tol, 8 * (n + 1));
}

double tail_distribution(int n, double delta) {
    if (n < 1) throw std::invalid_argument("tail_distribution: N >= 1");
    const double x = n * delta;
    const double ax = std::abs(x);
    const double u = ax - M_PI;
    double shape;
    if (std::abs(u) < 1e-3) {
        // (1 + cos x)/(x - pi)^2 -> 1/2 - u^2/24 + u^4/720 near |x| = pi
        const double u2 = u * u;
        shape = (0.5 - u2 / 24.0 + u2 * u2 / 720.0) /
                ((ax + M_PI) * (ax + M_PI));
    } else {
        const double d2 = x * x - M_PI * M_PI;
        shape = (1.0 + std::cos(x)) / (d2 * d2);
    }
    return n * 2.0 * M_PI * shape;
}

namespace {

struct AiryConstants {
    double a0;
    double aip_a0;
    double c; // 2|A0|/3
};

const AiryConstants& airy_constants() {
    static const AiryConstants k = [] {
        AiryConstants v;
        v.a0 = special::airy_first_zero();
        v.aip_a0 = special::airy_ai_prime(v.a0);
        v.c = 2.0 * std::abs(v.a0) / 3.0;
        return v;
    }();
    return k;
}

} // namespace

double airy_profile(double mu) {
    if (mu < 0.0) return 0.0;
    const auto& k = airy_constants();
    const double arg = k.a0 + k.c * mu;
    if (arg > 10.0) return 0.0; // far tail below 1e-10 absolute
    return std::sqrt(k.c) / k.aip_a0 * special::airy_ai(arg);
}

std::pair<AirySolution, double> mean_energy_solution(double energy,
                                                     int grid_points) {
    if (!(energy > 0.0)) {
        throw std::invalid_argument("mean_energy_solution: E > 0 required");
    }
    const auto& k = airy_constants();
    AirySolution sol;
    sol.a0 = k.a0;
    sol.cost_constant = 4.0 * std::pow(std::abs(k.a0), 3) / 27.0;
    sol.energy = energy;
    const double mu_max = (10.0 - k.a0) / k.c * energy;
    sol.grid.resize(grid_points);
    sol.profile.resize(grid_points);
    for (int i = 0; i < grid_points; ++i) {
        const double mu = mu_max * i / (grid_points - 1);
        sol.grid[i] = mu;
        sol.profile[i] = airy_profile(mu / energy) / std::sqrt(energy);
    }
    const double cost = sol.cost_constant / (energy * energy);
    return {sol, cost};
}

double profile_kinetic_energy(const std::function<double(double)>& fprime,
                              double lo, double hi, double abs_tol) {
    return integrate([&](double mu) { const double d = fprime(mu); return d * d; },
                     lo, hi, abs_tol, 64);
}

} // namespace hbench::phase
