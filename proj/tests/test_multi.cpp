#include <doctest.h>

#include "hbench/multi.hpp"
#include "hbench/quadrature.hpp"
#include "hbench/special.hpp"
#include "support.hpp"

using namespace hbench;
using namespace hbench::test;
using fisher::RVec;

namespace {

double value_of(const std::vector<multi::CostScenario>& rows,
                const std::string& strategy) {
    for (const auto& r : rows) {
        if (r.strategy == strategy) return r.value;
    }
    FAIL("missing strategy row: " << strategy);
    return -1.0;
}

} // namespace

TEST_CASE("multiphase cost table") {
    // p = 1: joint and separate coincide
    const auto p1 = multi::multiphase_costs(1, 2.0, 3.0, 50.0);
    CHECK(value_of(p1, "SEP-CR") == doctest::Approx(1.0 / (2.0 * 9.0)));
    CHECK(value_of(p1, "JNT-CR") == doctest::Approx(1.0 / (2.0 * 9.0)));

    const auto p4 = multi::multiphase_costs(4, 1.0, 1.0, 100.0);
    CHECK(value_of(p4, "JNT-CR") == doctest::Approx(9.0));
    CHECK(p4.size() == 6);

    // mm advantage ratio is p-independent: 4|A0|^3 / (27 pi^2) ~ 0.192
    for (int p : {2, 5, 9}) {
        const auto rows = multi::multiphase_costs(p, 1.0, 1.0, 100.0);
        CHECK(value_of(rows, "JNT-MM-lower") / value_of(rows, "SEP-MM") ==
              doctest::Approx(0.19186).epsilon(1e-3));
    }
}

TEST_CASE("simplex ansatz energy by beta integrals") {
    CHECK(multi::simplex_ansatz_energy(1, 1.5, 1.0) ==
          doctest::Approx(11.25).epsilon(1e-12));
    // matches the printed closed form at (3/2, sqrt p)
    for (int p : {1, 2, 3, 5}) {
        CHECK(multi::simplex_ansatz_energy(p, 1.5, std::sqrt(double(p))) ==
              doctest::Approx(multi::simplex_ansatz_closed_form(p))
                  .epsilon(1e-9));
    }
    // 1-d ansatz can never beat the infinite-well ground state
    CounterRng rng(61);
    for (int t = 0; t < 20; ++t) {
        const double a = rng.uniform(0.55, 4.0);
        const double b = rng.uniform(0.55, 4.0);
        CHECK(multi::simplex_ansatz_energy(1, a, b) >=
              M_PI * M_PI - 1e-9);
    }
    // large p growth ~ 2 p^3
    CHECK(multi::simplex_ansatz_closed_form(400) /
              (2.0 * std::pow(400.0, 3)) ==
          doctest::Approx(1.0).epsilon(0.1));
    CHECK_THROWS_AS(multi::simplex_ansatz_energy(2, 0.5, 1.0),
                    std::domain_error);
}

TEST_CASE("simplex ansatz against two-dimensional quadrature") {
    // p = 2, exponents (3/2, sqrt 2): tensor Gauss-Legendre on the
    // collapsed square mu1 = u, mu2 = (1 - u) v, jacobian (1 - u)
    const double a = 1.5, b = std::sqrt(2.0);
    auto f = [&](double m1, double m2) {
        const double s = 1.0 - m1 - m2;
        if (m1 <= 0 || m2 <= 0 || s <= 0) return 0.0;
        return std::pow(m1 * m2, a) * std::pow(s, b);
    };
    auto df1 = [&](double m1, double m2) {
        // d/dm1 of f
        const double s = 1.0 - m1 - m2;
        if (m1 <= 0 || m2 <= 0 || s <= 0) return 0.0;
        return f(m1, m2) * (a / m1 - b / s);
    };
    std::vector<double> x, w;
    gauss_legendre(160, x, w);
    double norm = 0.0, num = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double u = 0.5 * (x[i] + 1.0);
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double v = 0.5 * (x[j] + 1.0);
            const double m1 = u, m2 = (1.0 - u) * v;
            const double jac = 0.25 * (1.0 - u);
            const double ww = w[i] * w[j] * jac;
            norm += ww * f(m1, m2) * f(m1, m2);
            const double g1 = df1(m1, m2);
            const double g2 = df1(m2, m1);
            num += ww * (g1 * g1 + g2 * g2);
        }
    }
    const double quad_energy = num / norm;
    CHECK(multi::simplex_ansatz_energy(2, a, b) ==
          doctest::Approx(quad_energy).epsilon(1e-4));
}

TEST_CASE("su2 cost table") {
    const auto z0 = multi::su2_costs(1.0, 2.0, 0.0, 10.0);
    CHECK(value_of(z0, "SEP-CR") == doctest::Approx(9.0 / 2.0));
    CHECK(value_of(z0, "JNT-CR-parallel") == doctest::Approx(3.0 / 2.0));
    CHECK(value_of(z0, "JNT-CR-adaptive") == doctest::Approx(3.0 / 2.0));

    // the adaptive advantage over separate is a factor 3 at large n
    const auto big = multi::su2_costs(200.0, 1.0, 0.4, 200.0);
    CHECK(value_of(big, "SEP-CR") / value_of(big, "JNT-CR-adaptive") ==
          doctest::Approx(3.0));
    // parallel/adaptive ratio is (n + 2)/n * 3
    CHECK(value_of(big, "JNT-CR-parallel") /
              value_of(big, "JNT-CR-adaptive") ==
          doctest::Approx(3.0 * 200.0 / 202.0).epsilon(1e-12));

    CHECK_THROWS_AS(multi::su2_costs(1.0, 1.0, M_PI, 10.0),
                    std::domain_error);
}

TEST_CASE("bell probe single-gate qfi diagonal") {
    const auto gens = multi::su2_generators();
    qm::Vec bell(4);
    bell << 1.0 / std::sqrt(2.0), 0, 0, 1.0 / std::sqrt(2.0);
    for (double tn : {0.5, 1.0}) {
        RVec th(3);
        th << 0.0, 0.0, 2.0 * tn;
        const auto f = multi::adaptive_qfi(
            gens, th, 1, multi::Controls::InverseEvolution, bell);
        const double s = multi::sinc(tn);
        CHECK(std::abs(f.matrix()(0, 0) - s * s) < 1e-8);
        CHECK(std::abs(f.matrix()(1, 1) - s * s) < 1e-8);
        CHECK(std::abs(f.matrix()(2, 2) - 1.0) < 1e-8);
    }
}

TEST_CASE("inverse-evolution controls give n^2 qfi scaling") {
    const auto gens = multi::su2_generators();
    qm::Vec bell(4);
    bell << 1.0 / std::sqrt(2.0), 0, 0, 1.0 / std::sqrt(2.0);
    RVec th(3);
    th << 0.0, 0.0, 1.3;
    const auto f1 = multi::adaptive_qfi(
        gens, th, 1, multi::Controls::InverseEvolution, bell);
    for (int n = 2; n <= 4; ++n) {
        const auto fn = multi::adaptive_qfi(
            gens, th, n, multi::Controls::InverseEvolution, bell);
        CHECK(qm::max_abs(Mat((fn.matrix() -
                               static_cast<double>(n) * n * f1.matrix())
                                  .cast<qm::cplx>())) < 1e-8);
    }
}

TEST_CASE("controls are irrelevant for a single gate use") {
    CounterRng rng(71);
    const auto gens = multi::su2_generators();
    for (int t = 0; t < 10; ++t) {
        RVec th(3);
        th << rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1);
        const qm::Vec probe = random_ket(rng, 4);
        const auto a = multi::adaptive_qfi(
            gens, th, 1, multi::Controls::InverseEvolution, probe);
        const auto b = multi::adaptive_qfi(gens, th, 1,
                                           multi::Controls::Identity, probe);
        CHECK((a.matrix() - b.matrix()).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("commuting generators: sequential equals the ghz-type parallel") {
    // multi-phase generators commute; identity-control sequential use of n
    // gates on |psi> matches the n-fold parallel family on |i>^(x n)
    const int p = 2, n = 3;
    const auto gens = multi::multiphase_generators(p);
    CounterRng rng(73);
    Eigen::VectorXd amps(p + 1);
    for (int i = 0; i <= p; ++i) amps[i] = rng.uniform(0.2, 1.0);
    amps /= amps.norm();
    qm::Vec probe = amps.cast<qm::cplx>();

    RVec th(p);
    th << 0.3, -0.4;
    const auto seq = multi::adaptive_qfi(gens, th, n,
                                         multi::Controls::Identity, probe);

    // GHZ-type parallel state: sum_i c_i e^{i n theta . lambda_i} |i..i>
    const int dim = p + 1;
    long big = 1;
    for (int m = 0; m < n; ++m) big *= dim;
    qm::Vec psi = qm::Vec::Zero(big);
    std::vector<qm::Vec> dpsi(p, qm::Vec::Zero(big));
    for (int i = 0; i <= p; ++i) {
        long idx = 0;
        for (int m = 0; m < n; ++m) idx = idx * dim + i;
        const double phase = i >= 1 ? n * th[i - 1] : 0.0;
        psi[idx] = amps[i] * std::polar(1.0, phase);
        if (i >= 1) {
            dpsi[i - 1][idx] =
                qm::cplx(0, n) * amps[i] * std::polar(1.0, phase);
        }
    }
    const Eigen::MatrixXd parallel = fisher::qfi_pure_matrix(psi, dpsi);
    CHECK((seq.matrix() - parallel).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("two-point field costs and spans") {
    const auto rows = multi::two_point_field_costs(2.0, 5.0, 40.0);
    CHECK(value_of(rows, "JNT-CR") == doctest::Approx(value_of(rows, "SEP-CR")));
    CHECK(value_of(rows, "SEP-MM") / value_of(rows, "JNT-MM") ==
          doctest::Approx(2.0));

    // spin-z convention: single-site spans are 1, the rotated spans 1/sqrt2
    const auto gens = multi::two_point_generators();
    CHECK(qm::spectral_span(gens.generators[0]) == doctest::Approx(1.0));
    const auto spans = multi::two_point_rotated_spans();
    CHECK(spans.first == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(spans.second == doctest::Approx(1.0 / std::sqrt(2.0)));

    // with full sigma_z the same operators have span 2 and rotated span
    // sqrt2 (the two printed readings of the same construction)
    Mat proj = Mat::Zero(2, 2);
    proj(1, 1) = 1.0;
    const qm::HermitianOperator full(qm::tensor(proj, qm::pauli_z()));
    CHECK(qm::spectral_span(full) == doctest::Approx(2.0));
    Mat proj0 = Mat::Zero(2, 2);
    proj0(0, 0) = 1.0;
    const Mat rot = (qm::tensor(proj0, qm::pauli_z()) +
                     qm::tensor(proj, qm::pauli_z())) /
                    std::sqrt(2.0);
    CHECK(qm::spectral_span(qm::HermitianOperator(rot)) ==
          doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("reparametrization bound reproduces the closed values") {
    CHECK(multi::reparam_bound(multi::su2_generators(), 1.0) ==
          doctest::Approx(3.0 * M_PI * M_PI).epsilon(1e-4));
    CHECK(multi::reparam_bound(multi::multiphase_generators(2), 1.0) ==
          doctest::Approx(2.5 * M_PI * M_PI).epsilon(1e-4));
    CHECK(multi::reparam_bound(multi::two_point_generators(), 1.0) ==
          doctest::Approx(4.0 * M_PI * M_PI).epsilon(1e-4));
    // 1/N^2 scaling
    CHECK(multi::reparam_bound(multi::su2_generators(), 10.0) ==
          doctest::Approx(0.03 * M_PI * M_PI).epsilon(1e-4));
}

TEST_CASE("extended-separate direction optimization") {
    // su2 sigma/2: every unit direction has span 1
    const auto su2 = multi::sep_plus_bound(multi::su2_generators(), 1.0, 1.0,
                                           1.0);
    CHECK(su2.first == doctest::Approx(27.0 * M_PI * M_PI).epsilon(1e-6));
    CHECK(su2.second == doctest::Approx(9.0).epsilon(1e-6));

    // a single generator leaves no freedom
    multi::GeneratorSet single;
    single.generators.emplace_back(0.5 * qm::pauli_z());
    const auto solo = multi::sep_plus_bound(single, 1.0, 1.0, 1.0);
    CHECK(solo.first == doctest::Approx(M_PI * M_PI).epsilon(1e-9));

    // two-point field with full sigma_z: the best direction is axis-aligned
    multi::GeneratorSet full;
    Mat p0 = Mat::Zero(2, 2), p1 = Mat::Zero(2, 2);
    p0(0, 0) = 1.0;
    p1(1, 1) = 1.0;
    full.generators.emplace_back(qm::tensor(p0, qm::pauli_z()));
    full.generators.emplace_back(qm::tensor(p1, qm::pauli_z()));
    CHECK(multi::max_direction_span(full) == doctest::Approx(2.0).epsilon(1e-8));
}
