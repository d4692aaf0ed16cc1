#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hbench/fisher.hpp"

namespace hbench::est {

using fisher::ProbModel;

/// How to turn an outcome sequence into a parameter estimate. Estimates are
/// deterministic functions of the outcome counts (order never matters for
/// the i.i.d. models here) and of the spec itself.
struct EstimatorSpec {
    enum class Kind { MaximumLikelihood, LocallyUnbiased, Custom };
    Kind kind = Kind::MaximumLikelihood;

    // maximum likelihood: grid search then golden-section refinement
    double grid_lo = 0.0;
    double grid_hi = M_PI;
    int grid_points = 10000;
    int golden_iters = 3;

    // locally unbiased: per-outcome estimates precomputed at theta0
    double theta0 = 0.0;
    std::vector<double> lu_values;

    std::function<double(const std::vector<long>& counts, long k)> custom;

    static EstimatorSpec maximum_likelihood(double lo, double hi,
                                            int points = 10000,
                                            int golden = 3);
    static EstimatorSpec custom_map(
        std::function<double(const std::vector<long>&, long)> fn);
};

/// Result of a seeded Monte Carlo MSE run; bit-reproducible for fixed seed.
struct McResult {
    long k = 0;
    long n_samples = 0;
    double mean_estimate = 0.0;
    double mse = 0.0;
    double mse_stderr = 0.0;
    std::uint64_t seed = 0;
};

/// Interferometer coin: p(0|theta) = (1 - sin theta)/2, analytic derivative.
ProbModel coin_model();

/// Exact ML estimator of the coin from the outcome sum: arcsin(2s/k - 1).
double ml_coin(long s, long k);

/// Locally unbiased estimator at theta0:
/// theta(x) = theta0 + (1/F)(1/p_x) dp_x, averaged over the sequence.
EstimatorSpec locally_unbiased_estimator(const ProbModel& model,
                                         double theta0);

/// Estimate from outcome counts.
double estimate(const ProbModel& model, const EstimatorSpec& spec,
                const std::vector<long>& counts, long k);

/// Seeded Monte Carlo of the estimator MSE at true parameter theta with k
/// outcomes per trial. Trial t uses CounterRng::stream(seed, t), so results
/// do not depend on any parallel scheduling.
McResult mc_mse(const ProbModel& model, const EstimatorSpec& spec,
                double theta, long k, long n_samples, std::uint64_t seed);

/// Truncated mixture of n00n interferometer branches, weights 1/(N_M m^3):
/// outcomes (m, +-) for m = 1..M with p(m,+) = cos^2(m theta/2)/(N_M m^3).
struct NoonMixtureModel {
    int m_max = 1;
    double fi_closed = 0.0;    // (sum 1/m) / N_M, theta-independent
    double mean_energy = 0.0;  // (sum 1/(2 m^2)) / N_M
    ProbModel model;
};

NoonMixtureModel noon_mixture_model(int m_max);

struct ConvergenceRow {
    int m_max;
    long k;
    double mse;
    double mse_stderr;
    double cr; // 1 / (k * fi_closed)
};

struct ConvergenceOptions {
    double theta = 1.78072;
    long n_samples = 100; // trials per MSE estimate
    int repetitions = 100; // MSE estimates averaged per point
    int grid_points = 10000;
    int golden_iters = 3;
};

/// Monte Carlo ML convergence table over (M, k); the ML estimator uses a
/// grid on [0, pi] (the model cannot distinguish theta from 2 pi - theta).
std::vector<ConvergenceRow> convergence_study(const std::vector<int>& m_list,
                                              const std::vector<long>& k_grid,
                                              std::uint64_t seed,
                                              const ConvergenceOptions& opts = {});

/// Exact ML mean-squared error by enumeration of all outcome sequences;
/// feasible only for tiny k, used as an oracle for mc_mse.
double exact_ml_mse(const ProbModel& model, const EstimatorSpec& spec,
                    double theta, int k);

} // namespace hbench::est
