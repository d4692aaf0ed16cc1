#include "hbench/multi.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hbench/optim.hpp"
#include "hbench/rng.hpp"
#include "hbench/special.hpp"

namespace hbench::multi {

using qm::cplx;
using qm::Vec;

GeneratorSet su2_generators() {
    GeneratorSet g;
    g.generators.emplace_back(0.5 * qm::pauli_x());
    g.generators.emplace_back(0.5 * qm::pauli_y());
    g.generators.emplace_back(0.5 * qm::pauli_z());
    return g;
}

GeneratorSet multiphase_generators(int p) {
    if (p < 1) throw std::invalid_argument("multiphase_generators: p >= 1");
    GeneratorSet g;
    for (int i = 1; i <= p; ++i) {
        Mat m = Mat::Zero(p + 1, p + 1);
        m(i, i) = 1.0;
        g.generators.emplace_back(m);
    }
    return g;
}

GeneratorSet two_point_generators() {
    GeneratorSet g;
    for (int site = 0; site < 2; ++site) {
        Mat proj = Mat::Zero(2, 2);
        proj(site, site) = 1.0;
        g.generators.emplace_back(qm::tensor(proj, 0.5 * qm::pauli_z()));
    }
    return g;
}

namespace {

struct EigCache {
    Eigen::VectorXd w;
    Mat v;
};

EigCache eig_of(const GeneratorSet& gens, const RVec& theta) {
    const Eigen::Index d = gens.dim();
    Mat h = Mat::Zero(d, d);
    for (int i = 0; i < gens.param_count(); ++i) {
        h += theta[i] * gens.generators[static_cast<std::size_t>(i)].matrix();
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    return {es.eigenvalues(), es.eigenvectors()};
}

} // namespace

Mat evolution(const GeneratorSet& gens, const RVec& theta) {
    const EigCache e = eig_of(gens, theta);
    Vec phases(e.w.size());
    for (Eigen::Index i = 0; i < e.w.size(); ++i) {
        phases[i] = std::polar(1.0, e.w[i]);
    }
    return e.v * phases.asDiagonal() * e.v.adjoint();
}

Mat evolution_derivative(const GeneratorSet& gens, const RVec& theta, int i) {
    // Daleckii-Krein: d e^{iH} = V [Phi o (V^dag dH V)] V^dag with
    // Phi_ab = (e^{i w_a} - e^{i w_b})/(w_a - w_b), Phi_aa = i e^{i w_a}.
    const EigCache e = eig_of(gens, theta);
    const Eigen::Index d = e.w.size();
    const Mat g = e.v.adjoint() *
                  gens.generators[static_cast<std::size_t>(i)].matrix() * e.v;
    Mat phi(d, d);
    for (Eigen::Index a = 0; a < d; ++a) {
        for (Eigen::Index b = 0; b < d; ++b) {
            const double diff = e.w[a] - e.w[b];
            if (std::abs(diff) < 1e-12) {
                phi(a, b) = cplx(0, 1) * std::polar(1.0, e.w[a]);
            } else {
                phi(a, b) = (std::polar(1.0, e.w[a]) -
                             std::polar(1.0, e.w[b])) /
                            diff;
            }
        }
    }
    return e.v * phi.cwiseProduct(g) * e.v.adjoint();
}

fisher::FisherMatrix adaptive_qfi(const GeneratorSet& gens, const RVec& theta0,
                                  int n, Controls controls,
                                  const qm::Vec& probe) {
    if (n < 1 || n > 6) {
        throw std::invalid_argument("adaptive_qfi: n must be in 1..6");
    }
    const Eigen::Index d = gens.dim();
    if (probe.size() % d != 0) {
        throw std::invalid_argument(
            "adaptive_qfi: probe must live on system x ancilla");
    }
    const Eigen::Index d_anc = probe.size() / d;
    const Mat id_anc = qm::identity(d_anc);
    const Mat u0 = evolution(gens, theta0);
    const Mat v = controls == Controls::InverseEvolution
                      ? qm::tensor(Mat(u0.adjoint()), id_anc)
                      : qm::identity(probe.size());
    const Mat step = v * qm::tensor(u0, id_anc);

    std::vector<Vec> states(static_cast<std::size_t>(n) + 1);
    states[0] = probe;
    for (int m = 1; m <= n; ++m) {
        states[static_cast<std::size_t>(m)] =
            step * states[static_cast<std::size_t>(m - 1)];
    }
    const Vec& psi = states[static_cast<std::size_t>(n)];

    const int p = gens.param_count();
    std::vector<Vec> dpsi(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) {
        const Mat dstep = v * qm::tensor(evolution_derivative(gens, theta0, i),
                                         id_anc);
        Vec acc = Vec::Zero(probe.size());
        for (int m = 1; m <= n; ++m) {
            Vec term = dstep * states[static_cast<std::size_t>(m - 1)];
            for (int rest = m + 1; rest <= n; ++rest) term = step * term;
            acc += term;
        }
        dpsi[static_cast<std::size_t>(i)] = acc;
    }
    return fisher::FisherMatrix(fisher::qfi_pure_matrix(psi, dpsi));
}

fisher::QuantumStatFamily multiphase_joint_family(int p, long n) {
    if (p < 1 || n < 1) {
        throw std::invalid_argument("multiphase_joint_family: p, n >= 1");
    }
    const double alpha = 1.0 / std::sqrt(p + std::sqrt(double(p)));
    const double beta = 1.0 / std::sqrt(1.0 + std::sqrt(double(p)));
    const double nn = static_cast<double>(n);
    auto state = [=](const RVec& th) {
        Vec psi(p + 1);
        psi[0] = beta;
        for (int i = 1; i <= p; ++i) {
            psi[i] = alpha * std::polar(1.0, nn * th[i - 1]);
        }
        return psi;
    };
    fisher::QuantumStatFamily fam;
    fam.param_count = p;
    fam.rho = [state](const RVec& th) {
        return qm::DensityMatrix(qm::Ket(state(th)));
    };
    fam.drho = [state, alpha, nn, p](const RVec& th, int i) {
        const Vec psi = state(th);
        Vec dpsi = Vec::Zero(p + 1);
        dpsi[i + 1] = cplx(0, nn) * alpha * std::polar(1.0, nn * th[i]);
        const Mat d = dpsi * psi.adjoint() + psi * dpsi.adjoint();
        return qm::HermitianOperator(d);
    };
    return fam;
}

namespace {

const double kAiryCost = [] {
    const double a0 = special::airy_first_zero();
    return 4.0 * std::pow(std::abs(a0), 3) / 27.0;
}();

} // namespace

std::vector<CostScenario> multiphase_costs(int p, double k, double n,
                                           double total_n) {
    if (p < 1 || !(k > 0) || !(n > 0) || !(total_n > 0)) {
        throw std::invalid_argument("multiphase_costs: positive inputs");
    }
    const double pd = p;
    const double sq = std::sqrt(pd);
    const double n2 = total_n * total_n;
    std::vector<CostScenario> rows;
    auto add = [&](const std::string& strat, double value) {
        rows.push_back({"multiphase", strat, p, k, n, total_n, value});
    };
    add("SEP-CR", pd * pd / (k * n * n));
    add("JNT-CR", (1.0 + sq) * (1.0 + sq) * pd / (4.0 * k * n * n));
    add("SEP-MM", pd * pd * pd * M_PI * M_PI / n2);
    add("JNT-MM-lower", kAiryCost * pd * pd * pd / n2);
    add("JNT-MM-ansatz", simplex_ansatz_closed_form(p) / n2);
    const auto sp = sep_plus_bound(multiphase_generators(p), k, n, total_n);
    add("SEP-PLUS-MM", sp.first);
    return rows;
}

double simplex_ansatz_closed_form(int p) {
    const double pd = p;
    const double sq = std::sqrt(pd);
    return pd * (1.0 + 2.0 * sq) * (1.0 + 2.0 * sq) * sq *
           (4.0 * pd + 2.0 * sq - 1.0) / (8.0 * sq - 4.0);
}

namespace {

// Dirichlet integral over the simplex: int prod mu_i^{c_i} (1-sum mu)^{c0}
// = prod Gamma(c_i+1) Gamma(c0+1) / Gamma(sum c_i + p + c0 + 1).
double dirichlet(const std::vector<double>& c, double c0) {
    double lg = std::lgamma(c0 + 1.0);
    double sum = c0 + 1.0;
    for (double ci : c) {
        lg += std::lgamma(ci + 1.0);
        sum += ci + 1.0;
    }
    return std::exp(lg - std::lgamma(sum));
}

} // namespace

double simplex_ansatz_energy(int p, double a_exp, double b_exp) {
    if (!(a_exp > 0.5) || !(b_exp > 0.5)) {
        throw std::domain_error(
            "simplex_ansatz_energy: exponents must exceed 1/2 (finite "
            "Dirichlet energy)");
    }
    std::vector<double> base(static_cast<std::size_t>(p), 2.0 * a_exp);
    const double norm = dirichlet(base, 2.0 * b_exp);
    std::vector<double> c1 = base;
    c1[0] = 2.0 * a_exp - 2.0;
    const double d1 = dirichlet(c1, 2.0 * b_exp);
    std::vector<double> c2 = base;
    c2[0] = 2.0 * a_exp - 1.0;
    const double d2 = dirichlet(c2, 2.0 * b_exp - 1.0);
    const double d3 = dirichlet(base, 2.0 * b_exp - 2.0);
    const double num = p * (a_exp * a_exp * d1 - 2.0 * a_exp * b_exp * d2 +
                            b_exp * b_exp * d3);
    return num / norm;
}

std::vector<CostScenario> su2_costs(double n, double k, double theta_norm,
                                    double total_n) {
    if (!(n >= 1) || !(k >= 1) || !(total_n > 0)) {
        throw std::invalid_argument("su2_costs: positive resources");
    }
    if (!(theta_norm >= 0.0) || theta_norm >= M_PI) {
        throw std::domain_error("su2_costs: theta_norm must be in [0, pi)");
    }
    const double s = sinc(theta_norm);
    const double load = 1.0 + 2.0 / (s * s);
    const double n2 = total_n * total_n;
    std::vector<CostScenario> rows;
    auto add = [&](const std::string& strat, double value) {
        rows.push_back({"su2", strat, 3, k, n, total_n, value});
    };
    add("SEP-CR", 3.0 / (k * n * n) * load);
    add("JNT-CR-parallel", 3.0 / (k * n * (n + 2.0)) * load);
    add("JNT-CR-adaptive", 1.0 / (k * n * n) * load);
    add("JNT-MM", 4.0 * M_PI * M_PI / n2);
    add("SEP-MM-lower", 27.0 * M_PI * M_PI / n2);
    return rows;
}

std::vector<CostScenario> two_point_field_costs(double k, double n,
                                                double total_n) {
    if (!(n >= 1) || !(k >= 1) || !(total_n > 0)) {
        throw std::invalid_argument("two_point_field_costs: positive inputs");
    }
    const double n2 = total_n * total_n;
    std::vector<CostScenario> rows;
    auto add = [&](const std::string& strat, double value) {
        rows.push_back({"two-point", strat, 2, k, n, total_n, value});
    };
    add("JNT-MM", 4.0 * M_PI * M_PI / n2);
    add("SEP-MM", 8.0 * M_PI * M_PI / n2);
    add("JNT-CR", 4.0 / (k * n * n));
    add("SEP-CR", 4.0 / (k * n * n));
    return rows;
}

std::pair<double, double> two_point_rotated_spans() {
    const GeneratorSet g = two_point_generators();
    const double inv = 1.0 / std::sqrt(2.0);
    const Mat plus = inv * (g.generators[0].matrix() + g.generators[1].matrix());
    const Mat minus = inv * (g.generators[0].matrix() - g.generators[1].matrix());
    return {qm::spectral_span(qm::HermitianOperator(plus)),
            qm::spectral_span(qm::HermitianOperator(minus))};
}

namespace {

Eigen::MatrixXd exp_skew(const Eigen::VectorXd& params, int p) {
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(p, p);
    int idx = 0;
    for (int i = 0; i < p; ++i) {
        for (int j = i + 1; j < p; ++j) {
            s(i, j) = params[idx];
            s(j, i) = -params[idx];
            ++idx;
        }
    }
    // scaling and squaring with a Pade-free Taylor core; p <= a handful here
    int squarings = 0;
    double norm = s.cwiseAbs().sum();
    while (norm > 0.5) {
        norm *= 0.5;
        ++squarings;
    }
    Eigen::MatrixXd a = s / std::pow(2.0, squarings);
    Eigen::MatrixXd term = Eigen::MatrixXd::Identity(p, p);
    Eigen::MatrixXd out = term;
    for (int k = 1; k <= 16; ++k) {
        term = term * a / k;
        out += term;
    }
    for (int i = 0; i < squarings; ++i) out = out * out;
    return out;
}

double rotated_sum(const GeneratorSet& gens, const Eigen::MatrixXd& o) {
    const int p = gens.param_count();
    const Eigen::Index d = gens.dim();
    double total = 0.0;
    for (int i = 0; i < p; ++i) {
        Mat m = Mat::Zero(d, d);
        for (int j = 0; j < p; ++j) {
            m += o(j, i) * gens.generators[static_cast<std::size_t>(j)].matrix();
        }
        Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
        const double span =
            es.eigenvalues().maxCoeff() - es.eigenvalues().minCoeff();
        if (!(span > 1e-14)) {
            return -std::numeric_limits<double>::infinity();
        }
        total += M_PI * M_PI / (span * span);
    }
    return total;
}

} // namespace

double reparam_bound(const GeneratorSet& gens, double total_n,
                     const SearchOptions& opts) {
    if (!(total_n > 0)) throw std::invalid_argument("reparam_bound: N > 0");
    const int p = gens.param_count();
    if (p == 1) {
        const double span = qm::spectral_span(gens.generators[0]);
        return M_PI * M_PI / (span * span * total_n * total_n);
    }
    const int dim = p * (p - 1) / 2;
    const auto value = [&](const Eigen::VectorXd& x) {
        return rotated_sum(gens, exp_skew(x, p));
    };
    CounterRng rng(opts.seed);
    double best = value(Eigen::VectorXd::Zero(dim));
    for (int r = 0; r <= opts.restarts; ++r) {
        Eigen::VectorXd x0(dim);
        if (r == 0) {
            x0.setZero();
        } else {
            for (int i = 0; i < dim; ++i) {
                x0[i] = rng.uniform(-M_PI, M_PI);
            }
        }
        const opt::DescentResult res =
            opt::maximize_compass(value, x0, 0.4, 1e-9, 6000);
        if (res.value > best) best = res.value;
    }
    return best / (total_n * total_n);
}

double max_direction_span(const GeneratorSet& gens,
                          const SearchOptions& opts) {
    const int p = gens.param_count();
    const Eigen::Index d = gens.dim();
    const opt::Objective f = [&](const Eigen::VectorXd& a,
                                 Eigen::VectorXd* grad) {
        Mat m = Mat::Zero(d, d);
        for (int i = 0; i < p; ++i) {
            m += a[i] * gens.generators[static_cast<std::size_t>(i)].matrix();
        }
        Eigen::SelfAdjointEigenSolver<Mat> es(m);
        const Eigen::Index lo = 0, hi = d - 1;
        if (grad) {
            const Vec vm = es.eigenvectors().col(lo);
            const Vec vp = es.eigenvectors().col(hi);
            grad->resize(p);
            for (int i = 0; i < p; ++i) {
                const Mat& g =
                    gens.generators[static_cast<std::size_t>(i)].matrix();
                (*grad)[i] = std::real(vp.dot(g * vp) - vm.dot(g * vm));
            }
        }
        return es.eigenvalues()(hi) - es.eigenvalues()(lo);
    };
    opt::DescentOptions dopts;
    dopts.restarts = std::max(16, opts.restarts);
    dopts.seed = opts.seed;
    const opt::DescentResult res = opt::maximize_on_sphere(f, p, dopts);
    return res.value;
}

std::pair<double, double> sep_plus_bound(const GeneratorSet& gens, double k,
                                         double n, double total_n,
                                         const SearchOptions& opts) {
    const int p = gens.param_count();
    const double span = max_direction_span(gens, opts);
    const double pd = p;
    const double mm =
        pd * pd * pd * M_PI * M_PI / (total_n * total_n) / (span * span);
    const double cr = pd * pd / (k * n * n) / (span * span);
    return {mm, cr};
}

} // namespace hbench::multi
