#pragma once

#include <Eigen/Dense>
#include <functional>
#include <utility>
#include <vector>

namespace hbench::phase {

using Eigen::VectorXd;

/// State for covariant phase estimation over total-excitation sectors
/// m = 0..N: real non-negative coefficients with sum of squares 1 (all
/// phases can be absorbed into the basis).
class PhaseState {
  public:
    explicit PhaseState(VectorXd coeffs);

    const VectorXd& coeffs() const { return c_; }
    int n() const { return static_cast<int>(c_.size()) - 1; }

  private:
    VectorXd c_;
};

/// Covariant Bayesian 4sin^2 cost of a state: the (2,-1) tridiagonal
/// quadratic form sum_m (2 c_m^2 - c_m c_{m+1} - c_m c_{m-1}).
double phase_bayes_cost(const PhaseState& state);

/// The exact optimum for N+1 sectors: c_m = sqrt(2/(N+2)) sin((m+1)pi/(N+2))
/// with cost 2(1 - cos(pi/(N+2))).
std::pair<PhaseState, double> optimal_sin_state(int n);

/// The (2,-1) tridiagonal cost matrix of dimension N+1.
Eigen::MatrixXd cost_tridiagonal(int n);

/// Bayesian 4sin^2 cost of the projective DFT measurement
/// {|chi_j>}, chi_j = (N+1)^{-1/2} sum_m e^{i 2 pi j m/(N+1)} |m>,
/// with estimate 2 pi j/(N+1), computed by explicit summation over j and
/// quadrature over theta against the flat prior. Equals phase_bayes_cost.
double dft_povm_cost(const PhaseState& state, double abs_tol = 1e-9);

/// Outcome-error density of the optimal covariant measurement in the
/// large-N shape: proportional to (1 + cos(N d))/((N d)^2 - pi^2)^2 with the
/// removable singularities at N d = +-pi filled in; normalized so that
/// the integral over d in R is 1 (the printed shape carries neither the
/// normalization nor the Jacobian in N).
double tail_distribution(int n, double delta);

/// Fixed-mean-energy optimal profile: f(mu) = sqrt(2|A0|/3)/Ai'(A0) *
/// Ai(A0 + 2|A0| mu /3) for the unit-energy problem, scaled to energy E.
struct AirySolution {
    double a0 = 0.0;             // first Airy zero
    double cost_constant = 0.0;  // 4|A0|^3/27
    double energy = 1.0;
    VectorXd grid;     // mu values
    VectorXd profile;  // f(mu) on the grid
};

/// Minimal covariant cost at mean energy E: cost = (4|A0|^3/27)/E^2,
/// with the Airy profile sampled on a quadrature grid.
std::pair<AirySolution, double> mean_energy_solution(double energy,
                                                     int grid_points = 2001);

/// Unit-energy Airy profile value f(mu).
double airy_profile(double mu);

/// Kinetic energy integral int |f'|^2 dmu of a profile given as a callable,
/// by quadrature of the analytic derivative when available.
double profile_kinetic_energy(const std::function<double(double)>& fprime,
                              double lo, double hi, double abs_tol = 1e-9);

} // namespace hbench::phase
