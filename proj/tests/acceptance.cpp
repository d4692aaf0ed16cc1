// Acceptance suite: one pass/fail line per criterion, at the pinned
// tolerances. Exit code is the number of failed criteria.

#include <Eigen/Eigenvalues>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "hbench/bounds.hpp"
#include "hbench/estimators.hpp"
#include "hbench/fisher.hpp"
#include "hbench/multi.hpp"
#include "hbench/noisy.hpp"
#include "hbench/phase.hpp"
#include "hbench/quadrature.hpp"
#include "hbench/special.hpp"
#include "properties.hpp"
#include "support.hpp"

using namespace hbench;
using fisher::RVec;

namespace {

int failures = 0;

void report(int criterion, const std::string& label, bool pass,
            const std::string& detail, double seconds) {
    std::printf("%s criterion %2d: %s [%.2fs]%s%s\n", pass ? "PASS" : "FAIL",
                criterion, label.c_str(), seconds,
                detail.empty() ? "" : " - ", detail.c_str());
    if (!pass) ++failures;
}

void run(int criterion, const std::string& label,
         const std::function<bool(std::string&)>& body) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool pass = false;
    try {
        pass = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    report(criterion, label, pass, detail, seconds);
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

bool criterion1(std::string& detail) {
    for (int n = 1; n <= 60; ++n) {
        const double closed = phase::optimal_sin_state(n).second;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
            phase::cost_tridiagonal(n), Eigen::EigenvaluesOnly);
        if (std::abs(es.eigenvalues().minCoeff() - closed) > 1e-10) {
            detail = "mismatch at N=" + std::to_string(n);
            return false;
        }
    }
    const double c100 = 1e4 * phase::optimal_sin_state(100).second;
    detail = "N=100: N^2 cost / pi^2 = " + num(c100 / (M_PI * M_PI));
    return c100 >= 0.95 * M_PI * M_PI && c100 <= M_PI * M_PI;
}

bool criterion2(std::string& detail) {
    double worst = 0.0;
    for (int n = 1; n <= 20; ++n) {
        const auto [state, cost] = phase::optimal_sin_state(n);
        worst = std::max(worst,
                         std::abs(phase::dft_povm_cost(state) - cost));
    }
    detail = "worst |dft - tridiagonal| = " + num(worst);
    return worst <= 1e-8;
}

bool criterion3(std::string& detail) {
    const double a0 = special::airy_first_zero();
    if (std::abs(a0 + 2.338107) > 1e-6) {
        detail = "first zero " + num(a0);
        return false;
    }
    const auto [sol, cost] = phase::mean_energy_solution(1.0);
    if (std::abs(cost - 1.8944) > 1e-3) {
        detail = "cost constant " + num(cost);
        return false;
    }
    // variational dominance over 20 random admissible profiles
    CounterRng rng(20250810ULL);
    for (int t = 0; t < 20; ++t) {
        const double a = rng.uniform(0.5, 3.0);
        const double b = rng.uniform(0.5, 2.5);
        const double w = rng.uniform(0.2, 1.5);
        auto g = [&](double mu) {
            return std::pow(mu, a) * std::exp(-b * mu) * (1.0 + w * mu);
        };
        auto gp = [&](double mu) {
            return std::pow(mu, a - 1) * std::exp(-b * mu) *
                   (a * (1.0 + w * mu) + mu * (w - b * (1.0 + w * mu)));
        };
        const double hi = 60.0 / b;
        const double n2 = integrate([&](double m) { return g(m) * g(m); },
                                    0.0, hi, 1e-11, 128);
        const double mean =
            integrate([&](double m) { return g(m) * g(m) * m; }, 0.0, hi,
                      1e-11, 128) /
            n2;
        const double kin =
            integrate([&](double m) { return gp(m) * gp(m); }, 0.0, hi,
                      1e-11, 128) /
            n2;
        if (mean * mean * kin < cost - 1e-6) {
            detail = "profile " + std::to_string(t) + " beats the optimum";
            return false;
        }
    }
    detail = "zero " + num(a0) + ", constant " + num(cost);
    return true;
}

bool criterion4(std::string& detail) {
    const auto grid = bounds::log_grid(2.0, 1e6, 200);
    const auto base = bounds::verify_appendix_b(grid, 1.0);
    if (!base.all_positive) {
        detail = "base scan not positive at y = " + num(base.argmin_y);
        return false;
    }
    // sensitivity guard as pinned: with 10x N_alpha the scan must fail at
    // small y. On y >= 2 the margin at y = 2 is a factor ~19.7, so the 10x
    // inflation does not flip the sign anywhere in the grid; only y < 1.7
    // (outside the stated grid) would fail. Reported faithfully.
    const auto inflated = bounds::verify_appendix_b(grid, 10.0);
    const bool guard_failed = !inflated.all_positive;
    if (!guard_failed) {
        detail = "positivity holds on [2, 1e6]; 10x guard does NOT fail "
                 "(term ratio at y=2 is 19.7, a 20x inflation would flip; "
                 "see decisions ledger)";
        return false;
    }
    detail = "minimum margin " + num(base.min_margin);
    return true;
}

bool criterion5(std::string& detail) {
    const auto coin = est::coin_model();
    for (int i = 0; i < 20; ++i) {
        const double th = -1.4 + 2.8 * i / 19.0;
        if (std::abs(fisher::classical_fi_scalar(coin, th) - 1.0) > 1e-10) {
            detail = "fisher information off at theta = " + num(th);
            return false;
        }
    }
    const auto ml = est::EstimatorSpec::custom_map(
        [](const std::vector<long>& c, long k) {
            return est::ml_coin(c[1], k);
        });
    const auto r = est::mc_mse(coin, ml, 0.5, 1000, 10000, 20250810ULL);
    const double kmse = 1000.0 * r.mse;
    detail = "k*mse = " + num(kmse) + " +- " + num(3000.0 * r.mse_stderr);
    return std::abs(kmse - 1.0) <= 3.0 * 1000.0 * r.mse_stderr;
}

bool criterion6(std::string& detail) {
    est::ConvergenceOptions o;
    o.n_samples = 100;
    o.repetitions = 20;
    const std::vector<long> grid{1,   2,   4,   8,    16,   32,  64,
                                 128, 256, 512, 1024, 2048, 4096};
    const auto rows =
        est::convergence_study({1, 2, 8}, grid, 20250810ULL, o);
    long entry[3] = {-1, -1, -1};
    const int order[3] = {1, 2, 8};
    for (const auto& r : rows) {
        const double ratio = r.mse / r.cr;
        for (int i = 0; i < 3; ++i) {
            if (r.m_max == order[i] && entry[i] < 0 && ratio >= 0.8 &&
                ratio <= 1.3) {
                entry[i] = r.k;
            }
        }
    }
    detail = "entry k = " + std::to_string(entry[0]) + ", " +
             std::to_string(entry[1]) + ", " + std::to_string(entry[2]);
    for (int i = 0; i < 3; ++i) {
        if (entry[i] < 0) return false;
    }
    return entry[0] <= entry[1] && entry[1] <= entry[2];
}

bool criterion7(std::string& detail) {
    for (double p : {0.0, 0.1, 0.25, 0.5}) {
        const double b =
            noisy::minimize_beta_norm(noisy::dephasing_channel(p), 0.0);
        if (std::abs(b - std::abs(1.0 - 2.0 * p)) > 1e-6) {
            detail = "dephasing beta at p = " + num(p) + ": " + num(b);
            return false;
        }
    }
    for (double eta : {0.3, 0.5, 0.62, 0.8}) {
        const double coeff = noisy::asymptotic_linear_coeff(
            noisy::lossy_interferometer_channel(eta), 0.0);
        const double expect = eta / (1.0 - eta); // 4 * eta/(4(1-eta))
        if (std::abs(coeff / expect - 1.0) > 1e-4) {
            detail = "lossy coefficient at eta = " + num(eta) + ": " +
                     num(coeff / 4.0) + " vs " + num(expect / 4.0);
            return false;
        }
    }
    const auto uch =
        noisy::unitary_channel(qm::HermitianOperator(0.5 * qm::pauli_z()));
    for (long n = 1; n <= 10; ++n) {
        const double b = noisy::minimize_parallel_bound(uch, 0.1, n);
        if (std::abs(b - static_cast<double>(n) * n) >
            1e-6 * static_cast<double>(n) * n) {
            detail = "unitary bound at n = " + std::to_string(n) + ": " +
                     num(b);
            return false;
        }
    }
    detail = "dephasing/lossy/unitary families all within tolerance";
    return true;
}

bool criterion8(std::string& detail) {
    const double p = 0.3, theta0 = 0.15;
    const auto same = noisy::qec_dephasing_demo(p, theta0, theta0);
    qm::Mat rho(2, 2);
    rho << 0.5, 0.5, 0.5, 0.5;
    if (qm::max_abs(same.logical - rho) > 1e-12) {
        detail = "recovery at theta0 is not the identity";
        return false;
    }
    const double h = 1e-5;
    const auto plus = noisy::qec_dephasing_demo(p, theta0, theta0 + h);
    const auto minus = noisy::qec_dephasing_demo(p, theta0, theta0 - h);
    const qm::Mat fd = (plus.logical - minus.logical) / (2.0 * h);
    const qm::Mat expect = qm::cplx(0, 1) * std::abs(1.0 - 2.0 * p) *
                           (qm::pauli_z() * rho - rho * qm::pauli_z());
    if (qm::max_abs(fd - expect) > 1e-5) {
        detail = "derivative mismatch " + num(qm::max_abs(fd - expect));
        return false;
    }
    // the pinned off-diagonal factor sqrt(1 - 4p(1-p) sin^2 delta): the
    // direct composition of the full-sigma_z Kraus set accumulates phase at
    // rate 2, giving sin^2(2 delta) instead; reported faithfully
    const double delta = 0.2;
    const auto away = noisy::qec_dephasing_demo(p, theta0, theta0 + delta);
    const double pinned =
        std::sqrt(1.0 - 4.0 * p * (1.0 - p) * std::pow(std::sin(delta), 2));
    if (std::abs(away.off_diag_factor - pinned) > 1e-10) {
        detail = "off-diagonal factor " + num(away.off_diag_factor) +
                 " vs pinned sqrt(1-4p(1-p)sin^2 d) = " + num(pinned) +
                 " (composition gives the 2-delta argument, ledger entry)";
        return false;
    }
    return true;
}

bool criterion9(std::string& detail) {
    const double a = noisy::quantum_advantage_db(
        noisy::squeeze_param_from_factor(0.1), 0.62);
    const double b = noisy::quantum_advantage_db(
        noisy::squeeze_param_from_factor(0.093), 0.44);
    detail = num(a) + " dB and " + num(b) + " dB";
    return std::abs(a - 3.55) <= 0.05 && std::abs(b - 2.2) <= 0.05;
}

bool criterion10(std::string& detail) {
    for (int p = 1; p <= 4; ++p) {
        for (long n = 1; n <= 3; ++n) {
            const auto fam = multi::multiphase_joint_family(p, n);
            RVec th = RVec::LinSpaced(p, 0.15, 0.15 + 0.2 * p);
            const double got =
                static_cast<double>(n) * n *
                fisher::qfi_matrix(fam, th).trace_inverse();
            const double expect = (1.0 + std::sqrt(double(p))) *
                                  (1.0 + std::sqrt(double(p))) * p / 4.0;
            if (std::abs(got - expect) > 1e-8) {
                detail = "qfi cost off at p=" + std::to_string(p) +
                         " n=" + std::to_string(n);
                return false;
            }
        }
    }
    // ansatz closed form vs 2-d quadrature at p = 2
    const double a = 1.5, b = std::sqrt(2.0);
    std::vector<double> x, w;
    gauss_legendre(160, x, w);
    auto f = [&](double m1, double m2) {
        const double s = 1.0 - m1 - m2;
        if (m1 <= 0 || m2 <= 0 || s <= 0) return 0.0;
        return std::pow(m1 * m2, a) * std::pow(s, b);
    };
    auto d1 = [&](double m1, double m2) {
        const double s = 1.0 - m1 - m2;
        if (m1 <= 0 || m2 <= 0 || s <= 0) return 0.0;
        return f(m1, m2) * (a / m1 - b / s);
    };
    double norm = 0.0, numerator = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double u = 0.5 * (x[i] + 1.0);
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double v = 0.5 * (x[j] + 1.0);
            const double m1 = u, m2 = (1.0 - u) * v;
            const double ww = w[i] * w[j] * 0.25 * (1.0 - u);
            norm += ww * f(m1, m2) * f(m1, m2);
            numerator += ww * (d1(m1, m2) * d1(m1, m2) +
                               d1(m2, m1) * d1(m2, m1));
        }
    }
    const double quad = numerator / norm;
    const double closed = multi::simplex_ansatz_energy(2, a, b);
    if (std::abs(closed / quad - 1.0) > 1e-4) {
        detail = "ansatz " + num(closed) + " vs quadrature " + num(quad);
        return false;
    }
    const double at1 = multi::simplex_ansatz_energy(1, 1.5, 1.0);
    detail = "p=1 ansatz energy " + num(at1) + ", p=2 quadrature agrees";
    return std::abs(at1 - 11.25) < 1e-9 && at1 > M_PI * M_PI;
}

bool criterion11(std::string& detail) {
    const auto gens = multi::su2_generators();
    qm::Vec bell(4);
    bell << 1.0 / std::sqrt(2.0), 0, 0, 1.0 / std::sqrt(2.0);
    for (double tn : {0.5, 1.0}) {
        RVec th(3);
        th << 0.0, 0.0, 2.0 * tn;
        const auto f1 = multi::adaptive_qfi(
            gens, th, 1, multi::Controls::InverseEvolution, bell);
        const double s2 = multi::sinc(tn) * multi::sinc(tn);
        if (std::abs(f1.matrix()(0, 0) - s2) > 1e-8 ||
            std::abs(f1.matrix()(1, 1) - s2) > 1e-8 ||
            std::abs(f1.matrix()(2, 2) - 1.0) > 1e-8) {
            detail = "single-gate diagonal off at theta = " + num(tn);
            return false;
        }
        for (int n = 2; n <= 4; ++n) {
            const auto fn = multi::adaptive_qfi(
                gens, th, n, multi::Controls::InverseEvolution, bell);
            const Eigen::MatrixXd diff =
                fn.matrix() - static_cast<double>(n) * n * f1.matrix();
            if (diff.cwiseAbs().maxCoeff() > 1e-8) {
                detail = "n^2 scaling off at n = " + std::to_string(n);
                return false;
            }
        }
    }
    detail = "single-gate diagonals and n^2 scaling verified";
    return true;
}

bool criterion12(std::string& detail) {
    struct Case {
        const char* name;
        multi::GeneratorSet gens;
        double expect;
    };
    std::vector<Case> cases;
    cases.push_back({"su2", multi::su2_generators(), 3.0 * M_PI * M_PI});
    cases.push_back(
        {"two-phase", multi::multiphase_generators(2), 2.5 * M_PI * M_PI});
    cases.push_back(
        {"two-point", multi::two_point_generators(), 4.0 * M_PI * M_PI});
    std::string got;
    for (const auto& c : cases) {
        const double v = multi::reparam_bound(c.gens, 1.0);
        got += std::string(c.name) + "=" + num(v / (M_PI * M_PI)) + "pi^2 ";
        if (std::abs(v / c.expect - 1.0) > 1e-4) {
            detail = std::string("mismatch for ") + c.name + ": " + num(v);
            return false;
        }
    }
    detail = got;
    return true;
}

bool criterion13(std::string& detail) {
    const auto results = test::run_all_properties(200, 20250810ULL);
    int failed = 0;
    for (const auto& r : results) {
        if (!r.passed) {
            ++failed;
            detail += (detail.empty() ? "" : "; ") + r.module + ": " + r.name;
            if (!r.detail.empty()) detail += " (" + r.detail + ")";
        }
    }
    if (failed == 0) {
        detail = std::to_string(results.size()) + " properties passed";
        return true;
    }
    return false;
}

} // namespace

int main() {
    run(1, "covariant phase cost closed form and asymptote", criterion1);
    run(2, "dft measurement equivalence", criterion2);
    run(3, "airy machinery", criterion3);
    run(4, "window inequality scan and sensitivity guard", criterion4);
    run(5, "coin-model fisher chain", criterion5);
    run(6, "ml convergence study entry points", criterion6);
    run(7, "noisy channel bounds", criterion7);
    run(8, "qec recovery demo", criterion8);
    run(9, "squeezed interferometer advantage", criterion9);
    run(10, "multi-phase qfi and simplex ansatz", criterion10);
    run(11, "su2 single-gate qfi and adaptive scaling", criterion11);
    run(12, "reparametrization bounds", criterion12);
    run(13, "randomized property suites", criterion13);
    std::printf("%d of 13 criteria passed\n", 13 - failures);
    return failures;
}
