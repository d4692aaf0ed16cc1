#include "hbench/noisy.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "hbench/fisher.hpp"

namespace hbench::noisy {

using Eigen::VectorXd;
using qm::Vec;

void KrausChannel::validate(double theta) const {
    const std::vector<Mat> k = kraus(theta);
    const std::vector<Mat> dk = dkraus(theta);
    if (k.size() != static_cast<std::size_t>(kraus_count) ||
        dk.size() != k.size()) {
        throw std::invalid_argument("KrausChannel: operator count mismatch");
    }
    Mat sum = Mat::Zero(dim, dim);
    Mat dsum = Mat::Zero(dim, dim);
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (k[i].rows() != dim || k[i].cols() != dim) {
            throw std::invalid_argument("KrausChannel: operator dimension");
        }
        sum += k[i].adjoint() * k[i];
        dsum += dk[i].adjoint() * k[i] + k[i].adjoint() * dk[i];
    }
    if (qm::max_abs(sum - qm::identity(dim)) > 1e-9) {
        throw std::invalid_argument("KrausChannel: not trace preserving");
    }
    if (qm::max_abs(dsum) > 1e-7) {
        throw std::invalid_argument(
            "KrausChannel: derivative breaks trace preservation");
    }
}

Mat KrausChannel::apply_with_ancilla(double theta, const Vec& psi) const {
    if (psi.size() != static_cast<Eigen::Index>(dim) * dim) {
        throw std::invalid_argument(
            "apply_with_ancilla: psi must live on system x ancilla");
    }
    const std::vector<Mat> k = kraus(theta);
    const Mat id = qm::identity(dim);
    Mat rho = Mat::Zero(psi.size(), psi.size());
    for (const Mat& op : k) {
        const Vec v = qm::tensor(op, id) * psi;
        rho += v * v.adjoint();
    }
    return rho;
}

namespace {

struct ChannelData {
    int d = 0;
    int r = 0;
    std::vector<Mat> k, dk;
    std::vector<Mat> basis;             // hermitian basis of r x r
    std::vector<std::vector<Mat>> kk;   // kk[i][j] = K_i^dag K_j
    Mat beta0;                          // sum K^dag dK
};

ChannelData load(const KrausChannel& ch, double theta) {
    ch.validate(theta);
    ChannelData cd;
    cd.d = ch.dim;
    cd.r = ch.kraus_count;
    cd.k = ch.kraus(theta);
    cd.dk = ch.dkraus(theta);
    cd.basis = qm::hermitian_basis(cd.r);
    cd.kk.assign(static_cast<std::size_t>(cd.r),
                 std::vector<Mat>(static_cast<std::size_t>(cd.r)));
    cd.beta0 = Mat::Zero(cd.d, cd.d);
    for (int i = 0; i < cd.r; ++i) {
        for (int j = 0; j < cd.r; ++j) {
            cd.kk[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                cd.k[static_cast<std::size_t>(i)].adjoint() *
                cd.k[static_cast<std::size_t>(j)];
        }
        cd.beta0 += cd.k[static_cast<std::size_t>(i)].adjoint() *
                    cd.dk[static_cast<std::size_t>(i)];
    }
    return cd;
}

struct AbEval {
    double anorm = 0.0;
    double bnorm = 0.0;
    VectorXd ga, gb;
};

// Norms of alpha(h), beta(h) and their subgradients with respect to the
// Hermitian-basis coordinates of h.
AbEval eval_ab(const ChannelData& cd, const VectorXd& hpar, bool grads) {
    const Mat h = qm::from_hermitian_basis(hpar, cd.r);
    std::vector<Mat> dmod(static_cast<std::size_t>(cd.r));
    for (int kk_i = 0; kk_i < cd.r; ++kk_i) {
        Mat d = cd.dk[static_cast<std::size_t>(kk_i)];
        for (int j = 0; j < cd.r; ++j) {
            d -= qm::cplx(0, 1) * h(kk_i, j) *
                 cd.k[static_cast<std::size_t>(j)];
        }
        dmod[static_cast<std::size_t>(kk_i)] = d;
    }
    Mat alpha = Mat::Zero(cd.d, cd.d);
    Mat beta = Mat::Zero(cd.d, cd.d);
    for (int i = 0; i < cd.r; ++i) {
        alpha += dmod[static_cast<std::size_t>(i)].adjoint() *
                 dmod[static_cast<std::size_t>(i)];
        beta += cd.k[static_cast<std::size_t>(i)].adjoint() *
                dmod[static_cast<std::size_t>(i)];
    }
    AbEval out;
    Eigen::SelfAdjointEigenSolver<Mat> es(alpha);
    out.anorm = es.eigenvalues().maxCoeff();
    Eigen::JacobiSVD<Mat> svd(beta, Eigen::ComputeThinU | Eigen::ComputeThinV);
    out.bnorm = svd.singularValues()(0);
    if (!grads) return out;

    Eigen::Index top;
    es.eigenvalues().maxCoeff(&top);
    const Vec v = es.eigenvectors().col(top);
    const Vec u = svd.matrixU().col(0);
    const Vec w = svd.matrixV().col(0);

    Mat s(cd.r, cd.r), g(cd.r, cd.r);
    std::vector<Vec> kv(static_cast<std::size_t>(cd.r)),
        dv(static_cast<std::size_t>(cd.r));
    for (int i = 0; i < cd.r; ++i) {
        kv[static_cast<std::size_t>(i)] = cd.k[static_cast<std::size_t>(i)] * v;
        dv[static_cast<std::size_t>(i)] =
            dmod[static_cast<std::size_t>(i)] * v;
    }
    for (int i = 0; i < cd.r; ++i) {
        for (int j = 0; j < cd.r; ++j) {
            s(i, j) = dv[static_cast<std::size_t>(i)].dot(
                kv[static_cast<std::size_t>(j)]);
            g(i, j) = u.dot(
                cd.kk[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                w);
        }
    }
    const Eigen::Index nb = static_cast<Eigen::Index>(cd.basis.size());
    out.ga.resize(nb);
    out.gb.resize(nb);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Eigen::Index a = 0;
    for (int i = 0; i < cd.r; ++i, ++a) {
        out.ga[a] = 2.0 * std::imag(s(i, i));
        out.gb[a] = std::imag(g(i, i));
    }
    for (int i = 0; i < cd.r; ++i) {
        for (int j = i + 1; j < cd.r; ++j) {
            // symmetric element
            out.ga[a] = 2.0 * inv_sqrt2 * std::imag(s(i, j) + s(j, i));
            out.gb[a] = inv_sqrt2 * std::imag(g(i, j) + g(j, i));
            ++a;
            // antisymmetric element, entries -i/sqrt2 and +i/sqrt2
            out.ga[a] = 2.0 * inv_sqrt2 * (std::real(s(j, i)) - std::real(s(i, j)));
            out.gb[a] = inv_sqrt2 * (std::real(g(j, i)) - std::real(g(i, j)));
            ++a;
        }
    }
    return out;
}

opt::DescentOptions descent_options(const MinimizeOptions& o) {
    opt::DescentOptions d;
    d.max_iters = o.max_iters;
    d.stall_tol = o.stall_tol;
    d.stall_window = o.stall_window;
    d.restarts = o.restarts;
    d.seed = o.seed;
    return d;
}


// Real least-squares system for beta(h) = 0: columns are vec(-i B_a-mixed
// Kraus products), rhs is -vec(beta0).
struct BetaSystem {
    Eigen::MatrixXd m;   // 2 d^2 x r^2
    Eigen::VectorXd rhs;
    Eigen::VectorXd particular;
    Eigen::MatrixXd nullspace;
    double residual = 0.0;
};

BetaSystem beta_zero_system(const ChannelData& cd) {
    const Eigen::Index nb = static_cast<Eigen::Index>(cd.basis.size());
    const Eigen::Index dd = static_cast<Eigen::Index>(cd.d) * cd.d;
    BetaSystem sys;
    sys.m.resize(2 * dd, nb);
    for (Eigen::Index a = 0; a < nb; ++a) {
        Mat ma = Mat::Zero(cd.d, cd.d);
        const Mat& ba = cd.basis[static_cast<std::size_t>(a)];
        for (int i = 0; i < cd.r; ++i) {
            for (int j = 0; j < cd.r; ++j) {
                const qm::cplx c = ba(i, j);
                if (c != qm::cplx(0, 0)) {
                    ma += qm::cplx(0, -1) * c *
                          cd.kk[static_cast<std::size_t>(i)]
                               [static_cast<std::size_t>(j)];
                }
            }
        }
        Eigen::Map<const Eigen::VectorXcd> mv(ma.data(), dd);
        sys.m.col(a).head(dd) = mv.real();
        sys.m.col(a).tail(dd) = mv.imag();
    }
    Eigen::Map<const Eigen::VectorXcd> b0(cd.beta0.data(), dd);
    sys.rhs.resize(2 * dd);
    sys.rhs.head(dd) = -b0.real();
    sys.rhs.tail(dd) = -b0.imag();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(
        sys.m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    sys.particular = svd.solve(sys.rhs);
    sys.residual = (sys.m * sys.particular - sys.rhs).norm();
    const double smax = svd.singularValues().size()
                            ? svd.singularValues()(0)
                            : 0.0;
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        if (svd.singularValues()(i) > 1e-11 * std::max(smax, 1.0)) ++rank;
    }
    sys.nullspace = svd.matrixV().rightCols(nb - rank);
    return sys;
}

// Minimize an objective assembled from ||alpha(h)||, ||beta(h)|| over
// Hermitian h. Starts from h = 0 and from the Frobenius least-squares
// minimizer of ||beta(h)||_F (the latter sits at beta = 0 whenever that is
// feasible, where the spectral norm is non-smooth).
double minimize_channel_objective(
    const ChannelData& cd,
    const std::function<double(const AbEval&, VectorXd*)>& assemble,
    const MinimizeOptions& opts) {
    const Eigen::Index nb = static_cast<Eigen::Index>(cd.basis.size());
    const opt::Objective f = [&](const VectorXd& x, VectorXd* grad) {
        const AbEval ab = eval_ab(cd, x, grad != nullptr);
        return assemble(ab, grad);
    };
    opt::DescentOptions dopts = descent_options(opts);
    dopts.restarts = std::max(1, opts.restarts / 2);
    opt::DescentResult best =
        opt::minimize_subgradient(f, VectorXd::Zero(nb), dopts);
    dopts.seed = opts.seed ^ 0x5a5a5a5aULL;
    const BetaSystem sys = beta_zero_system(cd);
    const opt::DescentResult alt =
        opt::minimize_subgradient(f, sys.particular, dopts);
    return std::min(best.value, alt.value);
}

} // namespace

AlphaBeta alpha_beta(const KrausChannel& ch, double theta, const Mat& h) {
    if (h.rows() != ch.kraus_count || h.cols() != ch.kraus_count) {
        throw std::invalid_argument(
            "alpha_beta: h must match the Kraus count");
    }
    qm::HermitianOperator hop(h, 1e-10); // validates Hermiticity
    const ChannelData cd = load(ch, theta);
    std::vector<Mat> dmod(static_cast<std::size_t>(cd.r));
    for (int i = 0; i < cd.r; ++i) {
        Mat d = cd.dk[static_cast<std::size_t>(i)];
        for (int j = 0; j < cd.r; ++j) {
            d -= qm::cplx(0, 1) * hop.matrix()(i, j) *
                 cd.k[static_cast<std::size_t>(j)];
        }
        dmod[static_cast<std::size_t>(i)] = d;
    }
    Mat alpha = Mat::Zero(cd.d, cd.d);
    Mat beta = Mat::Zero(cd.d, cd.d);
    for (int i = 0; i < cd.r; ++i) {
        alpha += dmod[static_cast<std::size_t>(i)].adjoint() *
                 dmod[static_cast<std::size_t>(i)];
        beta += cd.k[static_cast<std::size_t>(i)].adjoint() *
                dmod[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(alpha, Eigen::EigenvaluesOnly);
    Eigen::JacobiSVD<Mat> svd(beta);
    AlphaBeta out{qm::HermitianOperator(alpha, 1e-9 * std::max(1.0, qm::max_abs(alpha))),
                  beta, es.eigenvalues().maxCoeff(),
                  svd.singularValues()(0)};
    return out;
}

double minimize_parallel_bound(const KrausChannel& ch, double theta, long n,
                               const MinimizeOptions& opts) {
    if (n < 1) throw std::invalid_argument("minimize_parallel_bound: n >= 1");
    const ChannelData cd = load(ch, theta);
    const double nn = static_cast<double>(n);
    return minimize_channel_objective(
        cd,
        [nn](const AbEval& ab, VectorXd* grad) {
            if (grad) {
                *grad = 4.0 * (nn * ab.ga +
                               nn * (nn - 1.0) * 2.0 * ab.bnorm * ab.gb);
            }
            return 4.0 * (nn * ab.anorm + nn * (nn - 1.0) * ab.bnorm * ab.bnorm);
        },
        opts);
}

double adaptive_bound_iterative(const KrausChannel& ch, double theta, long n,
                                const MinimizeOptions& opts) {
    if (n < 1) throw std::invalid_argument("adaptive_bound_iterative: n >= 1");
    const ChannelData cd = load(ch, theta);
    double a = 0.0;
    for (long i = 0; i < n; ++i) {
        const double sq = std::sqrt(a);
        const double step = minimize_channel_objective(
            cd,
            [sq](const AbEval& ab, VectorXd* grad) {
                if (grad) *grad = ab.ga + 2.0 * sq * ab.gb;
                return ab.anorm + 2.0 * sq * ab.bnorm;
            },
            opts);
        a += step;
    }
    return 4.0 * a;
}

std::pair<double, double> adaptive_bound_closed(const KrausChannel& ch,
                                                double theta, long n,
                                                const MinimizeOptions& opts) {
    if (n < 1) throw std::invalid_argument("adaptive_bound_closed: n >= 1");
    const ChannelData cd = load(ch, theta);
    const double nn = static_cast<double>(n);
    const double b1 = minimize_channel_objective(
        cd,
        [nn](const AbEval& ab, VectorXd* grad) {
            const double sqa = std::sqrt(std::max(ab.anorm, 1e-300));
            if (grad) {
                *grad = 4.0 * (nn * ab.ga +
                               nn * (nn - 1.0) *
                                   (ab.gb * sqa +
                                    ab.bnorm / (2.0 * sqa) * ab.ga));
            }
            return 4.0 * (nn * ab.anorm + nn * (nn - 1.0) * ab.bnorm * sqa);
        },
        opts);
    const double logn = std::log(nn);
    const double ca = nn + nn * logn;
    const double cb = nn * (nn - 1.0) - nn * logn; // >= 0 for integer n >= 1
    const double b2 = minimize_channel_objective(
        cd,
        [ca, cb](const AbEval& ab, VectorXd* grad) {
            if (grad) {
                *grad = 4.0 * (ca * ab.ga + cb * 2.0 * ab.bnorm * ab.gb);
            }
            return 4.0 * (ca * ab.anorm + cb * ab.bnorm * ab.bnorm);
        },
        opts);
    return {b1, b2};
}

double minimize_beta_norm(const KrausChannel& ch, double theta,
                          const MinimizeOptions& opts) {
    const ChannelData cd = load(ch, theta);
    return minimize_channel_objective(
        cd,
        [](const AbEval& ab, VectorXd* grad) {
            if (grad) *grad = ab.gb;
            return ab.bnorm;
        },
        opts);
}

HnksResult hnks_test(const KrausChannel& ch, double theta) {
    const ChannelData cd = load(ch, theta);
    const BetaSystem sys = beta_zero_system(cd);
    HnksResult r;
    r.residual = sys.residual;
    r.violates_span = sys.residual > 1e-7;
    return r;
}

double asymptotic_linear_coeff(const KrausChannel& ch, double theta,
                               const MinimizeOptions& opts) {
    const ChannelData cd = load(ch, theta);
    const BetaSystem sys = beta_zero_system(cd);
    if (sys.residual > 1e-7) {
        throw std::domain_error(
            "asymptotic_linear_coeff: beta = 0 is infeasible (generator "
            "escapes the Kraus span)");
    }
    const Eigen::Index ny = sys.nullspace.cols();
    const opt::Objective f = [&](const VectorXd& y, VectorXd* grad) {
        const VectorXd hpar = sys.particular + sys.nullspace * y;
        const AbEval ab = eval_ab(cd, hpar, grad != nullptr);
        if (grad) *grad = sys.nullspace.transpose() * ab.ga;
        return ab.anorm;
    };
    if (ny == 0) {
        VectorXd none(0);
        return 4.0 * f(none, nullptr);
    }
    const opt::DescentResult res = opt::minimize_subgradient(
        f, VectorXd::Zero(ny), descent_options(opts));
    return 4.0 * res.value;
}

KrausChannel dephasing_channel(double p) {
    if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument("dephasing_channel: p in [0, 1]");
    }
    KrausChannel ch;
    ch.dim = 2;
    ch.kraus_count = 2;
    ch.kraus = [p](double theta) {
        const qm::cplx e_up = std::polar(1.0, theta);
        Mat phase(2, 2);
        phase << e_up, 0, 0, std::conj(e_up);
        std::vector<Mat> k(2);
        k[0] = std::sqrt(p) * phase;
        k[1] = std::sqrt(1.0 - p) * phase * qm::pauli_x();
        return k;
    };
    ch.dkraus = [p](double theta) {
        const qm::cplx i1(0, 1);
        const qm::cplx e_up = std::polar(1.0, theta);
        Mat phase(2, 2);
        phase << e_up, 0, 0, std::conj(e_up);
        const Mat dz = i1 * qm::pauli_z() * phase;
        std::vector<Mat> k(2);
        k[0] = std::sqrt(p) * dz;
        k[1] = std::sqrt(1.0 - p) * dz * qm::pauli_x();
        return k;
    };
    return ch;
}

KrausChannel lossy_interferometer_channel(double eta) {
    if (!(eta > 0.0) || !(eta < 1.0)) {
        throw std::invalid_argument(
            "lossy_interferometer_channel: 0 < eta < 1");
    }
    KrausChannel ch;
    ch.dim = 3; // {upper, lower, vacuum}
    ch.kraus_count = 3;
    const double root_eta = std::sqrt(eta);
    const double root_loss = std::sqrt(1.0 - eta);
    // dual-rail convention: the phase difference theta is split as
    // e^{+i theta/2} / e^{-i theta/2} between the arms (generator span 1)
    ch.kraus = [root_eta, root_loss](double theta) {
        std::vector<Mat> k(3, Mat::Zero(3, 3));
        k[0](0, 0) = root_eta * std::polar(1.0, 0.5 * theta);
        k[0](1, 1) = root_eta * std::polar(1.0, -0.5 * theta);
        k[0](2, 2) = 1.0;
        k[1](2, 0) = root_loss;
        k[2](2, 1) = root_loss;
        return k;
    };
    ch.dkraus = [root_eta](double theta) {
        std::vector<Mat> k(3, Mat::Zero(3, 3));
        k[0](0, 0) = qm::cplx(0, 0.5) * root_eta * std::polar(1.0, 0.5 * theta);
        k[0](1, 1) = qm::cplx(0, -0.5) * root_eta *
                     std::polar(1.0, -0.5 * theta);
        return k;
    };
    return ch;
}

KrausChannel unitary_channel(const qm::HermitianOperator& generator) {
    const qm::EigResult eig = qm::eig_hermitian(generator);
    const Eigen::Index d = generator.dim();
    KrausChannel ch;
    ch.dim = static_cast<int>(d);
    ch.kraus_count = 1;
    const Mat v = eig.eigenvectors;
    const Eigen::VectorXd w = eig.eigenvalues;
    const Mat g = generator.matrix();
    ch.kraus = [v, w, d](double theta) {
        Vec phases(d);
        for (Eigen::Index i = 0; i < d; ++i) {
            phases[i] = std::polar(1.0, theta * w[i]);
        }
        return std::vector<Mat>{v * phases.asDiagonal() * v.adjoint()};
    };
    ch.dkraus = [v, w, g, d](double theta) {
        Vec phases(d);
        for (Eigen::Index i = 0; i < d; ++i) {
            phases[i] = std::polar(1.0, theta * w[i]);
        }
        const Mat u = v * phases.asDiagonal() * v.adjoint();
        return std::vector<Mat>{qm::cplx(0, 1) * g * u};
    };
    return ch;
}

double channel_output_qfi(const KrausChannel& ch, double theta,
                          const Vec& psi) {
    fisher::QuantumStatFamily fam;
    fam.param_count = 1;
    const KrausChannel* pch = &ch;
    const Vec state = psi;
    fam.rho = [pch, state](const fisher::RVec& th) {
        return qm::DensityMatrix(pch->apply_with_ancilla(th[0], state));
    };
    fam.drho = [pch, state](const fisher::RVec& th, int) {
        const std::vector<Mat> k = pch->kraus(th[0]);
        const std::vector<Mat> dk = pch->dkraus(th[0]);
        const Mat id = qm::identity(pch->dim);
        Mat d = Mat::Zero(state.size(), state.size());
        for (std::size_t i = 0; i < k.size(); ++i) {
            const Vec kv = qm::tensor(k[i], id) * state;
            const Vec dv = qm::tensor(dk[i], id) * state;
            d += dv * kv.adjoint() + kv * dv.adjoint();
        }
        return qm::HermitianOperator(d, 1e-9 * std::max(1.0, qm::max_abs(d)));
    };
    fisher::RVec th(1);
    th[0] = theta;
    return fisher::qfi_matrix(fam, th).scalar();
}

QecDemoResult qec_dephasing_demo(double p, double theta0, double theta,
                                 cplx a, cplx b) {
    if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument("qec_dephasing_demo: p in [0, 1]");
    }
    const double norm = std::sqrt(std::norm(a) + std::norm(b));
    a /= norm;
    b /= norm;
    const KrausChannel ch = dephasing_channel(p);
    const std::vector<Mat> k = ch.kraus(theta);
    const Mat id = qm::identity(2);

    // logical encoding on {|00>, |11>}
    Vec psi = Vec::Zero(4);
    psi[0] = a;
    psi[3] = b;
    Mat rho = Mat::Zero(4, 4);
    for (const Mat& op : k) {
        const Vec v = qm::tensor(op, id) * psi;
        rho += v * v.adjoint();
    }

    // recovery Krauses matched to theta0 (phase convention
    // e^{i theta sigma_z}|0> = e^{i theta}|0>)
    const qm::cplx e0 = std::polar(1.0, theta0);
    Mat r1 = Mat::Zero(4, 4), r2 = Mat::Zero(4, 4);
    r1(0, 0) = std::conj(e0);
    r1(3, 3) = e0;
    r2(0, 2) = e0;
    r2(3, 1) = std::conj(e0);
    const Mat rec = r1 * rho * r1.adjoint() + r2 * rho * r2.adjoint();

    QecDemoResult out;
    out.logical.resize(2, 2);
    out.logical << rec(0, 0), rec(0, 3), rec(3, 0), rec(3, 3);
    const double ab = std::abs(a * std::conj(b));
    out.off_diag_factor = ab > 0 ? std::abs(rec(0, 3)) / ab : 0.0;
    return out;
}

double squeezed_mse(double nbar, double r, double phi, double eta,
                    double theta) {
    if (!(eta > 0.0) || eta > 1.0) {
        throw std::invalid_argument("squeezed_mse: 0 < eta <= 1");
    }
    const double sh = std::sinh(r);
    if (!(nbar > sh * sh)) {
        throw std::invalid_argument(
            "squeezed_mse: mean photon number must exceed sinh^2 r");
    }
    const double st = std::sin(theta), ct = std::cos(theta);
    if (st == 0.0) {
        throw std::domain_error(
            "squeezed_mse: insensitive point, d<N->/dtheta = 0");
    }
    const double sig = nbar - sh * sh;
    const double slope2 = eta * eta / 4.0 * st * st * sig * sig;
    const double sh2r = std::sinh(2.0 * r);
    const double cphi = std::cos(phi), sphi = std::sin(phi);
    const double var =
        eta * eta / 4.0 *
        (ct * ct * (nbar + 0.5 * sh2r * sh2r) +
         st * st *
             (nbar * (cphi * cphi * std::exp(-2.0 * r) +
                      sphi * sphi * std::exp(2.0 * r)) +
              sh * sh) +
         (1.0 - eta) / eta * (nbar + sh * sh));
    return var / slope2;
}

double quantum_advantage_db(double r, double eta) {
    if (!(eta > 0.0) || eta > 1.0) {
        throw std::invalid_argument("quantum_advantage_db: 0 < eta <= 1");
    }
    return -10.0 * std::log10(eta * std::exp(-2.0 * r) + (1.0 - eta));
}

double squeeze_param_from_factor(double e2r) {
    if (!(e2r > 0.0)) {
        throw std::invalid_argument("squeeze factor must be positive");
    }
    return -0.5 * std::log(e2r);
}

KrausChannel channel_from_json(const std::string& json_text, double* theta0) {
    const nlohmann::json j = nlohmann::json::parse(json_text);
    const int dim = j.at("dim").get<int>();
    const double th0 = j.value("theta0", 0.0);
    auto parse_ops = [dim](const nlohmann::json& arr) {
        std::vector<Mat> ops;
        for (const auto& mj : arr) {
            Mat m(dim, dim);
            if (static_cast<int>(mj.size()) != dim) {
                throw std::invalid_argument("channel json: bad matrix shape");
            }
            for (int r = 0; r < dim; ++r) {
                const auto& row = mj.at(static_cast<std::size_t>(r));
                if (static_cast<int>(row.size()) != dim) {
                    throw std::invalid_argument(
                        "channel json: bad matrix shape");
                }
                for (int c = 0; c < dim; ++c) {
                    const auto& e = row.at(static_cast<std::size_t>(c));
                    m(r, c) = qm::cplx(e.at(0).get<double>(),
                                       e.at(1).get<double>());
                }
            }
            ops.push_back(std::move(m));
        }
        return ops;
    };
    const std::vector<Mat> k = parse_ops(j.at("kraus"));
    const std::vector<Mat> dk = parse_ops(j.at("dkraus"));
    if (k.size() != dk.size() || k.empty()) {
        throw std::invalid_argument(
            "channel json: kraus and dkraus must have equal nonzero length");
    }
    KrausChannel ch;
    ch.dim = dim;
    ch.kraus_count = static_cast<int>(k.size());
    ch.kraus = [k](double) { return k; };
    ch.dkraus = [dk](double) { return dk; };
    ch.validate(th0);
    if (theta0) *theta0 = th0;
    return ch;
}

} // namespace hbench::noisy
