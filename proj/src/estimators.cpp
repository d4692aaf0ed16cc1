#include "hbench/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hbench/rng.hpp"

namespace hbench::est {

using fisher::RVec;

EstimatorSpec EstimatorSpec::maximum_likelihood(double lo, double hi,
                                                int points, int golden) {
    EstimatorSpec s;
    s.kind = Kind::MaximumLikelihood;
    s.grid_lo = lo;
    s.grid_hi = hi;
    s.grid_points = points;
    s.golden_iters = golden;
    return s;
}

EstimatorSpec EstimatorSpec::custom_map(
    std::function<double(const std::vector<long>&, long)> fn) {
    EstimatorSpec s;
    s.kind = Kind::Custom;
    s.custom = std::move(fn);
    return s;
}

ProbModel coin_model() {
    return fisher::make_scalar_model(
        2,
        [](double th) {
            RVec p(2);
            p << 0.5 * (1.0 - std::sin(th)), 0.5 * (1.0 + std::sin(th));
            return p;
        },
        [](double th) {
            RVec d(2);
            d << -0.5 * std::cos(th), 0.5 * std::cos(th);
            return d;
        });
}

double ml_coin(long s, long k) {
    if (s < 0 || s > k || k < 1) {
        throw std::invalid_argument("ml_coin: need 0 <= s <= k");
    }
    return std::asin(2.0 * static_cast<double>(s) / static_cast<double>(k) -
                     1.0);
}

EstimatorSpec locally_unbiased_estimator(const ProbModel& model,
                                         double theta0) {
    RVec th(1);
    th[0] = theta0;
    const double f = fisher::classical_fi(model, th).scalar();
    if (!(f > 0.0)) {
        throw std::domain_error(
            "locally_unbiased_estimator: zero Fisher information at theta0");
    }
    const RVec p = model.probabilities(th);
    const RVec dp = model.derivative(th, 0);
    EstimatorSpec s;
    s.kind = EstimatorSpec::Kind::LocallyUnbiased;
    s.theta0 = theta0;
    s.lu_values.resize(static_cast<std::size_t>(p.size()));
    for (Eigen::Index x = 0; x < p.size(); ++x) {
        if (p[x] <= 0.0) {
            // never drawn at theta0; outcome value irrelevant but finite
            s.lu_values[static_cast<std::size_t>(x)] = theta0;
            continue;
        }
        s.lu_values[static_cast<std::size_t>(x)] =
            theta0 + dp[x] / (f * p[x]);
    }
    return s;
}

namespace {

double log_likelihood(const ProbModel& model, const std::vector<long>& counts,
                      double theta) {
    RVec th(1);
    th[0] = theta;
    const RVec p = model.prob(th);
    double ll = 0.0;
    for (std::size_t x = 0; x < counts.size(); ++x) {
        if (counts[x] == 0) continue;
        const double px = p[static_cast<Eigen::Index>(x)];
        if (px <= 0.0) return -std::numeric_limits<double>::infinity();
        ll += static_cast<double>(counts[x]) * std::log(px);
    }
    return ll;
}

double golden_refine(const std::function<double(double)>& f, double lo,
                     double hi, int iters) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    return f1 > f2 ? x1 : x2;
}

double ml_estimate(const ProbModel& model, const EstimatorSpec& spec,
                   const std::vector<long>& counts) {
    const int n = spec.grid_points;
    const double h = (spec.grid_hi - spec.grid_lo) / (n - 1);
    double best = spec.grid_lo;
    double best_ll = -std::numeric_limits<double>::infinity();
    for (int g = 0; g < n; ++g) {
        const double th = spec.grid_lo + g * h;
        const double ll = log_likelihood(model, counts, th);
        if (ll > best_ll) {
            best_ll = ll;
            best = th;
        }
    }
    const double lo = std::max(spec.grid_lo, best - h);
    const double hi = std::min(spec.grid_hi, best + h);
    return golden_refine(
        [&](double th) { return log_likelihood(model, counts, th); }, lo, hi,
        spec.golden_iters);
}

} // namespace

double estimate(const ProbModel& model, const EstimatorSpec& spec,
                const std::vector<long>& counts, long k) {
    switch (spec.kind) {
        case EstimatorSpec::Kind::MaximumLikelihood:
            return ml_estimate(model, spec, counts);
        case EstimatorSpec::Kind::LocallyUnbiased: {
            double s = 0.0;
            for (std::size_t x = 0; x < counts.size(); ++x) {
                s += static_cast<double>(counts[x]) * spec.lu_values[x];
            }
            return s / static_cast<double>(k);
        }
        case EstimatorSpec::Kind::Custom:
            return spec.custom(counts, k);
    }
    throw std::logic_error("estimate: unknown estimator kind");
}

namespace {

std::vector<double> cumulative(const RVec& p) {
    std::vector<double> c(static_cast<std::size_t>(p.size()));
    double acc = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        acc += std::max(0.0, p[i]);
        c[static_cast<std::size_t>(i)] = acc;
    }
    c.back() = std::max(c.back(), 1.0); // guard the last bin against round-off
    return c;
}

inline std::size_t draw(const std::vector<double>& cum, double u) {
    return static_cast<std::size_t>(
        std::lower_bound(cum.begin(), cum.end(), u) - cum.begin());
}

} // namespace

McResult mc_mse(const ProbModel& model, const EstimatorSpec& spec,
                double theta, long k, long n_samples, std::uint64_t seed) {
    if (k < 1 || n_samples < 1) {
        throw std::invalid_argument("mc_mse: k and n_samples must be >= 1");
    }
    RVec th(1);
    th[0] = theta;
    const RVec p = model.probabilities(th);
    const std::vector<double> cum = cumulative(p);
    std::vector<long> counts(static_cast<std::size_t>(p.size()));

    std::vector<double> sq(static_cast<std::size_t>(n_samples));
    double mean_acc = 0.0;
    for (long t = 0; t < n_samples; ++t) {
        CounterRng rng = CounterRng::stream(seed, static_cast<std::uint64_t>(t));
        std::fill(counts.begin(), counts.end(), 0L);
        for (long i = 0; i < k; ++i) ++counts[draw(cum, rng.next_double())];
        const double est = estimate(model, spec, counts, k);
        const double e = est - theta;
        sq[static_cast<std::size_t>(t)] = e * e;
        mean_acc += est;
    }
    McResult r;
    r.k = k;
    r.n_samples = n_samples;
    r.seed = seed;
    double mse = 0.0;
    for (double v : sq) mse += v;
    mse /= static_cast<double>(n_samples);
    double var = 0.0;
    for (double v : sq) var += (v - mse) * (v - mse);
    var /= std::max(1.0, static_cast<double>(n_samples - 1));
    r.mse = mse;
    r.mse_stderr = std::sqrt(var / static_cast<double>(n_samples));
    r.mean_estimate = mean_acc / static_cast<double>(n_samples);
    return r;
}

NoonMixtureModel noon_mixture_model(int m_max) {
    if (m_max < 1) {
        throw std::invalid_argument("noon_mixture_model: M >= 1 required");
    }
    double norm = 0.0, harm = 0.0, energy = 0.0;
    for (int m = 1; m <= m_max; ++m) {
        const double md = m;
        norm += 1.0 / (md * md * md);
        harm += 1.0 / md;
        energy += 0.5 / (md * md);
    }
    NoonMixtureModel out;
    out.m_max = m_max;
    out.fi_closed = harm / norm;
    out.mean_energy = energy / norm;

    const double n_m = norm;
    out.model = fisher::make_scalar_model(
        2 * m_max,
        [m_max, n_m](double th) {
            RVec p(2 * m_max);
            for (int m = 1; m <= m_max; ++m) {
                const double w = 1.0 / (n_m * m * m * m);
                const double c = std::cos(0.5 * m * th);
                const double s = std::sin(0.5 * m * th);
                p[2 * (m - 1)] = w * c * c;
                p[2 * (m - 1) + 1] = w * s * s;
            }
            return p;
        },
        [m_max, n_m](double th) {
            RVec d(2 * m_max);
            for (int m = 1; m <= m_max; ++m) {
                const double w = 1.0 / (n_m * m * m * m);
                const double v = 0.5 * m * std::sin(m * th) * w;
                d[2 * (m - 1)] = -v;
                d[2 * (m - 1) + 1] = v;
            }
            return d;
        });
    return out;
}

std::vector<ConvergenceRow> convergence_study(
    const std::vector<int>& m_list, const std::vector<long>& k_grid,
    std::uint64_t seed, const ConvergenceOptions& opts) {
    std::vector<ConvergenceRow> rows;
    for (int m_max : m_list) {
        const NoonMixtureModel nm = noon_mixture_model(m_max);
        RVec th(1);
        th[0] = opts.theta;
        const RVec p = nm.model.probabilities(th);
        const std::vector<double> cum = cumulative(p);

        // Log-probability table over the ML grid, outcome-major.
        const int g_count = opts.grid_points;
        const double h = M_PI / (g_count - 1);
        const std::size_t n_out = static_cast<std::size_t>(2 * m_max);
        std::vector<std::vector<double>> logp(
            n_out, std::vector<double>(static_cast<std::size_t>(g_count)));
        for (int g = 0; g < g_count; ++g) {
            RVec tg(1);
            tg[0] = g * h;
            const RVec pg = nm.model.prob(tg);
            for (std::size_t x = 0; x < n_out; ++x) {
                const double v = pg[static_cast<Eigen::Index>(x)];
                logp[x][static_cast<std::size_t>(g)] =
                    v > 0.0 ? std::log(v)
                            : -std::numeric_limits<double>::infinity();
            }
        }

        EstimatorSpec ml =
            EstimatorSpec::maximum_likelihood(0.0, M_PI, g_count,
                                              opts.golden_iters);
        std::vector<double> obj(static_cast<std::size_t>(g_count));
        std::vector<long> counts(n_out);

        for (std::size_t ik = 0; ik < k_grid.size(); ++ik) {
            const long k = k_grid[ik];
            const std::uint64_t sub =
                derive_seed(seed, static_cast<std::uint64_t>(m_max),
                            static_cast<std::uint64_t>(k));
            std::vector<double> rep_mse(
                static_cast<std::size_t>(opts.repetitions));
            for (int rep = 0; rep < opts.repetitions; ++rep) {
                double acc = 0.0;
                for (long t = 0; t < opts.n_samples; ++t) {
                    CounterRng rng = CounterRng::stream(
                        sub, static_cast<std::uint64_t>(rep) * 1000003ULL +
                                 static_cast<std::uint64_t>(t));
                    std::fill(counts.begin(), counts.end(), 0L);
                    for (long i = 0; i < k; ++i) {
                        ++counts[draw(cum, rng.next_double())];
                    }
                    // grid scan using the table
                    std::fill(obj.begin(), obj.end(), 0.0);
                    for (std::size_t x = 0; x < n_out; ++x) {
                        if (counts[x] == 0) continue;
                        const double c = static_cast<double>(counts[x]);
                        const double* lp = logp[x].data();
                        for (int g = 0; g < g_count; ++g) {
                            obj[static_cast<std::size_t>(g)] += c * lp[g];
                        }
                    }
                    int best_g = 0;
                    double best_v = obj[0];
                    for (int g = 1; g < g_count; ++g) {
                        if (obj[static_cast<std::size_t>(g)] > best_v) {
                            best_v = obj[static_cast<std::size_t>(g)];
                            best_g = g;
                        }
                    }
                    const double lo = std::max(0.0, best_g * h - h);
                    const double hi = std::min(M_PI, best_g * h + h);
                    const double est = golden_refine(
                        [&](double t2) {
                            return log_likelihood(nm.model, counts, t2);
                        },
                        lo, hi, ml.golden_iters);
                    const double e = est - opts.theta;
                    acc += e * e;
                }
                rep_mse[static_cast<std::size_t>(rep)] =
                    acc / static_cast<double>(opts.n_samples);
            }
            double mse = 0.0;
            for (double v : rep_mse) mse += v;
            mse /= static_cast<double>(opts.repetitions);
            double var = 0.0;
            for (double v : rep_mse) var += (v - mse) * (v - mse);
            var /= std::max(1.0, static_cast<double>(opts.repetitions - 1));
            ConvergenceRow row;
            row.m_max = m_max;
            row.k = k;
            row.mse = mse;
            row.mse_stderr =
                std::sqrt(var / static_cast<double>(opts.repetitions));
            row.cr = 1.0 / (static_cast<double>(k) * nm.fi_closed);
            rows.push_back(row);
        }
    }
    return rows;
}

double exact_ml_mse(const ProbModel& model, const EstimatorSpec& spec,
                    double theta, int k) {
    RVec th(1);
    th[0] = theta;
    const RVec p = model.probabilities(th);
    const int n_out = static_cast<int>(p.size());
    std::vector<long> counts(static_cast<std::size_t>(n_out), 0L);
    double mse = 0.0;
    // depth-first over all outcome sequences (multinomially weighted by
    // enumerating counts would be faster; sequence count is fine for tiny k)
    std::function<void(int, double)> rec = [&](int depth, double prob) {
        if (depth == k) {
            const double e = estimate(model, spec, counts, k) - theta;
            mse += prob * e * e;
            return;
        }
        for (int x = 0; x < n_out; ++x) {
            const double px = p[x];
            if (px <= 0.0) continue;
            ++counts[static_cast<std::size_t>(x)];
            rec(depth + 1, prob * px);
            --counts[static_cast<std::size_t>(x)];
        }
    };
    rec(0, 1.0);
    return mse;
}

} // namespace hbench::est
