#include <doctest.h>

#include "hbench/estimators.hpp"
#include "support.hpp"

using namespace hbench;
using namespace hbench::test;
using fisher::RVec;

TEST_CASE("coin model probabilities") {
    const auto coin = est::coin_model();
    RVec th(1);
    th << 0.0;
    RVec p = coin.probabilities(th);
    CHECK(p[0] == doctest::Approx(0.5));
    CHECK(p[1] == doctest::Approx(0.5));
    th << M_PI / 2;
    p = coin.probabilities(th);
    CHECK(p[0] == doctest::Approx(0.0));
    CHECK(p[1] == doctest::Approx(1.0));
}

TEST_CASE("coin ml closed form") {
    CHECK(est::ml_coin(50, 100) == doctest::Approx(0.0));
    CHECK(est::ml_coin(100, 100) == doctest::Approx(M_PI / 2));
    CHECK_THROWS_AS(est::ml_coin(5, 3), std::invalid_argument);
}

TEST_CASE("coin ml reaches the cramer-rao asymptote") {
    const auto coin = est::coin_model();
    const auto ml = est::EstimatorSpec::custom_map(
        [](const std::vector<long>& c, long k) {
            return est::ml_coin(c[1], k);
        });
    const auto r = est::mc_mse(coin, ml, 1.0, 100, 20000, 7);
    CHECK(std::abs(100.0 * r.mse - 1.0) <= 3.0 * 100.0 * r.mse_stderr);
}

TEST_CASE("locally unbiased estimator at the balanced point") {
    const auto coin = est::coin_model();
    const auto lu = est::locally_unbiased_estimator(coin, 0.0);
    CHECK(lu.lu_values[1] == doctest::Approx(1.0));
    CHECK(lu.lu_values[0] == doctest::Approx(-1.0));

    // both local unbiasedness conditions hold exactly by construction
    RVec th(1);
    th << 0.0;
    const RVec p = coin.probabilities(th);
    const RVec dp = coin.derivative(th, 0);
    double mean = 0.0, slope = 0.0;
    for (int x = 0; x < 2; ++x) {
        mean += p[x] * lu.lu_values[static_cast<std::size_t>(x)];
        slope += dp[x] * lu.lu_values[static_cast<std::size_t>(x)];
    }
    CHECK(mean == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(slope == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(
        est::locally_unbiased_estimator(coin, M_PI / 2),
        std::domain_error); // F = 0 at the edge (cos = 0 makes dp vanish)
}

TEST_CASE("locally unbiased estimator degrades away from its anchor") {
    const auto coin = est::coin_model();
    const auto lu = est::locally_unbiased_estimator(coin, 0.0);
    const auto near = est::mc_mse(coin, lu, 0.0, 100, 4000, 11);
    const auto far = est::mc_mse(coin, lu, 1.0, 100, 4000, 12);
    CHECK(far.mse > 10.0 * near.mse);
}

TEST_CASE("deterministic model with the exact estimator has zero mse") {
    auto delta = fisher::make_scalar_model(
        2,
        [](double) {
            RVec p(2);
            p << 0.0, 1.0;
            return p;
        },
        [](double) { return RVec(RVec::Zero(2)); });
    const auto exact = est::EstimatorSpec::custom_map(
        [](const std::vector<long>&, long) { return 0.7; });
    const auto r = est::mc_mse(delta, exact, 0.7, 5, 100, 3);
    CHECK(r.mse == 0.0);
}

TEST_CASE("mc mse at k = 1000 sits on the cramer-rao asymptote") {
    const auto coin = est::coin_model();
    const auto ml = est::EstimatorSpec::custom_map(
        [](const std::vector<long>& c, long k) {
            return est::ml_coin(c[1], k);
        });
    const auto r = est::mc_mse(coin, ml, 0.5, 1000, 10000, 5);
    CHECK(std::abs(1000.0 * r.mse - 1.0) <= 3.0 * 1000.0 * r.mse_stderr);
}

TEST_CASE("mc mse is bit-reproducible for a fixed seed") {
    const auto coin = est::coin_model();
    const auto ml = est::EstimatorSpec::custom_map(
        [](const std::vector<long>& c, long k) {
            return est::ml_coin(c[1], k);
        });
    const auto a = est::mc_mse(coin, ml, 0.8, 50, 2000, 12345);
    const auto b = est::mc_mse(coin, ml, 0.8, 50, 2000, 12345);
    CHECK(a.mse == b.mse);
    CHECK(a.mean_estimate == b.mean_estimate);
    CHECK(a.mse_stderr == b.mse_stderr);
}

TEST_CASE("monte carlo matches exact enumeration for tiny k") {
    const auto nm = est::noon_mixture_model(2);
    const auto ml = est::EstimatorSpec::maximum_likelihood(0.0, M_PI, 3000, 3);
    const double theta = 1.1;
    for (int k : {1, 2, 3}) {
        const double exact = est::exact_ml_mse(nm.model, ml, theta, k);
        const auto mc = est::mc_mse(nm.model, ml, theta, k, 4000, 77);
        CHECK(std::abs(mc.mse - exact) <= 3.5 * mc.mse_stderr + 1e-9);
    }
}

TEST_CASE("noon mixture closed forms") {
    const auto m1 = est::noon_mixture_model(1);
    CHECK(m1.fi_closed == doctest::Approx(1.0));
    RVec th(1);
    th << 0.9;
    CHECK(fisher::classical_fi_scalar(m1.model, 0.9) == doctest::Approx(1.0));

    const auto m2 = est::noon_mixture_model(2);
    CHECK(m2.fi_closed == doctest::Approx(1.5 / (9.0 / 8.0)));
    CHECK(fisher::classical_fi_scalar(m2.model, 0.7) ==
          doctest::Approx(m2.fi_closed).epsilon(1e-10));

    // the partial sums approach pi^2/(12 zeta(3)) = 0.68422, not the
    // rounded 0.64
    const auto big = est::noon_mixture_model(2000000);
    CHECK(big.mean_energy == doctest::Approx(0.684216).epsilon(1e-4));
}

TEST_CASE("convergence study saturates the cr bound for M = 1") {
    est::ConvergenceOptions o;
    o.n_samples = 100;
    o.repetitions = 10;
    const auto rows = est::convergence_study({1}, {512, 1024}, 2024, o);
    for (const auto& r : rows) {
        CHECK(r.mse / r.cr == doctest::Approx(1.0).epsilon(0.15));
    }
}
