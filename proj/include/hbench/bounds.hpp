#pragma once

#include <map>
#include <string>
#include <vector>

namespace hbench::bounds {

/// A named bound value with its validity flag and inputs. `informative`
/// is false whenever the validity condition of the bound fails (the value
/// is still the raw formula evaluation, possibly negative; it is not
/// clamped, so a vacuous bound is visible as such).
struct BoundReport {
    std::string name;
    double value = 0.0;
    bool informative = false;
    std::map<std::string, double> inputs;
    std::string notes;

    std::string to_json() const;
};

/// The informativeness threshold of 1 - 8 log(x)/x (positive for x >= 26.1).
inline constexpr double kInformativeX = 26.1;

/// Minimax cost bound for N gates with generator span lambda and prior
/// window delta: (pi^2/(lambda^2 N^2)) (1 - 8 log(N lambda delta)/(N lambda delta)).
BoundReport pi_corrected_minimax(double n, double lambda, double delta);

/// Bayesian variant with the sqrt-corrected (slower) convergence term.
BoundReport pi_corrected_bayes(double n, double lambda, double delta);

/// Mean-energy bound (ground energy 0): (4|A0|^3/27)(1/E^2)(1 - 8 log(E d)/(E d)).
BoundReport mean_energy_minimax(double energy, double delta);

/// Frequency estimation with N_pr probes, generator span lambda_G, total
/// time T and prior window delta_omega.
BoundReport frequency_bound(double n_probes, double total_time,
                            double lambda_g, double delta_omega);

/// Magnetic field gradient estimation: 4 pi^2/(N_pr t hbar gamma L)^2.
BoundReport gradient_bound(double n_probes, double time, double gamma,
                           double length, double hbar = 1.0);

/// Finite-bandwidth prior built from the fourth power of the Fourier
/// transform of the Kaiser window. The main body has width 8 alpha / L;
/// the tails decay like e^{-4 pi alpha}.
class KaiserPrior {
  public:
    KaiserPrior(double alpha, double bandwidth);

    double alpha() const { return alpha_; }
    double bandwidth() const { return l_; }
    /// Numerically computed normalization N_alpha (density integrates to 1).
    double normalization() const { return n_alpha_; }
    /// Closed-form upper bound 4 sqrt(2) pi^4 alpha^{7/2} e^{-4 pi alpha}.
    double normalization_bound() const;
    double density(double theta) const;
    /// The raw shape N_alpha-free: sinc^4 / sinh^4 continuation.
    static double shape(double x, double alpha);

  private:
    double alpha_;
    double l_;
    double n_alpha_;
};

/// Closed-form tail bound 14 N_alpha L (4 alpha/L)^3 with the analytic
/// normalization bound (the direction the verification chain needs).
double r2_tail_bound(double alpha, double bandwidth);

/// Numerically integrated tail cost R2 = 2 int_{delta/2}^inf p(t)(t-delta/2)^2 dt
/// with delta/2 = 4 alpha/L, for checking the closed bound from above.
double r2_tail_quadrature(const KaiserPrior& prior);

struct AppendixBResult {
    bool all_positive = true;
    double min_margin = 0.0;
    double argmin_y = 0.0;
    std::vector<double> y;
    std::vector<double> margin;
};

/// Scans L^2 B2(y) = pi^2 (2z)^2 (3z^2+2z^3)/(1+z)^2 - 14 N_{log y} (4 log y)^3
/// with z = 4 log(y)/y over the grid. `n_alpha_scale` inflates the
/// normalization bound (sensitivity experiments).
AppendixBResult verify_appendix_b(const std::vector<double>& y_grid,
                                  double n_alpha_scale = 1.0);

/// 200 log-spaced points per decade covering [lo, hi].
std::vector<double> log_grid(double lo, double hi, int per_decade = 200);

} // namespace hbench::bounds
