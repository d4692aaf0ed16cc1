#include "hbench/fisher.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <limits>

#include "hbench/quadrature.hpp"
#include "hbench/rng.hpp"

namespace hbench::fisher {

namespace {

void validate_probs(const RVec& p) {
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (!(p[i] >= -1e-10)) {
            throw std::domain_error("ProbModel: negative probability " +
                                    std::to_string(p[i]));
        }
    }
    if (std::abs(p.sum() - 1.0) > 1e-9) {
        throw std::domain_error("ProbModel: probabilities sum to " +
                                std::to_string(p.sum()));
    }
}

} // namespace

RVec ProbModel::probabilities(const RVec& theta) const {
    RVec p = prob(theta);
    validate_probs(p);
    return p;
}

RVec ProbModel::derivative(const RVec& theta, int i) const {
    RVec d;
    if (dprob) {
        d = dprob(theta, i);
    } else {
        const double h = fd_step * std::max(1.0, std::abs(theta[i]));
        RVec tp = theta, tm = theta;
        tp[i] += h;
        tm[i] -= h;
        d = (prob(tp) - prob(tm)) / (2.0 * h);
    }
    if (std::abs(d.sum()) > 1e-6) {
        throw std::domain_error(
            "ProbModel: derivative of normalization is " +
            std::to_string(d.sum()));
    }
    return d;
}

ProbModel make_scalar_model(int outcomes, std::function<RVec(double)> prob,
                            std::function<RVec(double)> dprob) {
    ProbModel m;
    m.outcome_count = outcomes;
    m.prob = [prob](const RVec& th) { return prob(th[0]); };
    if (dprob) {
        m.dprob = [dprob](const RVec& th, int) { return dprob(th[0]); };
    }
    return m;
}

FisherMatrix::FisherMatrix(RMat entries) : m_(std::move(entries)) {
    if (m_.rows() != m_.cols()) {
        throw std::invalid_argument("FisherMatrix: square matrix required");
    }
    if ((m_ - m_.transpose()).cwiseAbs().maxCoeff() > 1e-9) {
        throw std::invalid_argument("FisherMatrix: not symmetric");
    }
    m_ = 0.5 * (m_ + m_.transpose().eval());
    Eigen::SelfAdjointEigenSolver<RMat> es(m_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-9) {
        throw std::invalid_argument("FisherMatrix: not positive semidefinite");
    }
}

double FisherMatrix::scalar() const {
    if (m_.rows() != 1) {
        throw std::logic_error("FisherMatrix::scalar: matrix is not 1x1");
    }
    return m_(0, 0);
}

RMat FisherMatrix::inverse() const {
    Eigen::SelfAdjointEigenSolver<RMat> es(m_);
    const RVec& ev = es.eigenvalues();
    const double emax = ev.maxCoeff();
    if (ev.minCoeff() <= 0.0 || emax / ev.minCoeff() > 1e12) {
        throw std::domain_error(
            "FisherMatrix: singular information matrix, parameter not "
            "identifiable");
    }
    return es.eigenvectors() * ev.cwiseInverse().asDiagonal() *
           es.eigenvectors().transpose();
}

double FisherMatrix::trace_inverse() const { return inverse().trace(); }

FisherMatrix classical_fi(const ProbModel& model, const RVec& theta) {
    const int p = static_cast<int>(theta.size());
    const RVec probs = model.probabilities(theta);
    std::vector<RVec> d(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) {
        d[static_cast<std::size_t>(i)] = model.derivative(theta, i);
    }
    RMat f = RMat::Zero(p, p);
    for (Eigen::Index x = 0; x < probs.size(); ++x) {
        const double px = probs[x];
        if (px <= 0.0) {
            for (int i = 0; i < p; ++i) {
                if (std::abs(d[static_cast<std::size_t>(i)][x]) > 1e-12) {
                    throw std::domain_error(
                        "classical_fi: p(x) = 0 with dp(x) != 0, model is "
                        "singular at this point");
                }
            }
            continue;
        }
        for (int i = 0; i < p; ++i) {
            for (int j = 0; j < p; ++j) {
                f(i, j) += d[static_cast<std::size_t>(i)][x] *
                           d[static_cast<std::size_t>(j)][x] / px;
            }
        }
    }
    return FisherMatrix(f);
}

double classical_fi_scalar(const ProbModel& model, double theta) {
    RVec th(1);
    th[0] = theta;
    return classical_fi(model, th).scalar();
}

HermitianOperator sld(const DensityMatrix& rho, const HermitianOperator& drho,
                      double eps_kernel) {
    if (std::abs(drho.matrix().trace().real()) > 1e-8) {
        throw std::invalid_argument("sld: drho must be traceless");
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(rho.matrix());
    const RVec& p = es.eigenvalues();
    const Mat& v = es.eigenvectors();
    const Mat d = v.adjoint() * drho.matrix() * v;
    Mat l = Mat::Zero(p.size(), p.size());
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        for (Eigen::Index j = 0; j < p.size(); ++j) {
            const double denom = p[i] + p[j];
            if (denom > eps_kernel) {
                l(i, j) = 2.0 * d(i, j) / denom;
            } else if (std::abs(d(i, j)) > eps_kernel) {
                throw std::domain_error(
                    "sld: drho has weight on the kernel of rho (rank change), "
                    "SLD undefined");
            }
        }
    }
    return HermitianOperator(v * l * v.adjoint(),
                             1e-9 * std::max(1.0, qm::max_abs(l)));
}

FisherMatrix qfi_matrix(const QuantumStatFamily& fam, const RVec& theta) {
    const int p = fam.param_count;
    const DensityMatrix rho = fam.rho(theta);
    std::vector<Mat> l(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) {
        l[static_cast<std::size_t>(i)] =
            sld(rho, fam.drho(theta, i)).matrix();
    }
    RMat f(p, p);
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) {
            f(i, j) = (rho.matrix() * l[static_cast<std::size_t>(i)] *
                       l[static_cast<std::size_t>(j)])
                          .trace()
                          .real();
        }
    }
    f = 0.5 * (f + f.transpose().eval());
    // Tiny negative eigenvalues from the eigensolve round-trip are clipped by
    // the FisherMatrix tolerance.
    return FisherMatrix(f);
}

double qfi_scalar(const QuantumStatFamily& fam, double theta) {
    RVec th(1);
    th[0] = theta;
    return qfi_matrix(fam, th).scalar();
}

double qfi_pure(const qm::Vec& psi, const qm::Vec& dpsi) {
    const qm::cplx overlap = dpsi.dot(psi);
    return 4.0 * (dpsi.squaredNorm() - std::norm(overlap));
}

RMat qfi_pure_matrix(const qm::Vec& psi, const std::vector<qm::Vec>& dpsi) {
    const int p = static_cast<int>(dpsi.size());
    RMat f(p, p);
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) {
            const qm::cplx dd = dpsi[static_cast<std::size_t>(i)].dot(
                dpsi[static_cast<std::size_t>(j)]);
            const qm::cplx di = dpsi[static_cast<std::size_t>(i)].dot(psi);
            const qm::cplx dj = psi.dot(dpsi[static_cast<std::size_t>(j)]);
            f(i, j) = 4.0 * std::real(dd - di * dj);
        }
    }
    return 0.5 * (f + f.transpose().eval());
}

double error_propagation(double var_a, double dmean_dtheta) {
    if (var_a < 0.0) {
        throw std::invalid_argument("error_propagation: negative variance");
    }
    if (dmean_dtheta == 0.0) {
        throw std::domain_error(
            "error_propagation: observable insensitive to the parameter "
            "(zero slope)");
    }
    return var_a / (dmean_dtheta * dmean_dtheta);
}

double mandelstam_bound(double var_h) {
    if (!(var_h > 0.0)) {
        throw std::domain_error(
            "mandelstam_bound: generator variance must be positive");
    }
    return 1.0 / (4.0 * var_h);
}

double van_trees_bound(double avg_fi, double prior_info) {
    const double denom = avg_fi + prior_info;
    if (!(denom > 0.0)) {
        throw std::domain_error("van_trees_bound: zero information");
    }
    return 1.0 / denom;
}

double prior_information(const std::function<double(double)>& density,
                         const std::function<double(double)>& ddensity,
                         double lo, double hi, double abs_tol) {
    return integrate(
        [&](double t) {
            const double p = density(t);
            if (p <= 1e-300) return 0.0;
            const double dp = ddensity(t);
            return dp * dp / p;
        },
        lo, hi, abs_tol, 32);
}

// ---------------------------------------------------------------------------
// Holevo Cramer-Rao bound
// ---------------------------------------------------------------------------

namespace {

// Hermitian part of the anti-Hermitian deviation: (B - B^dag)/(2i).
Mat imag_herm(const Mat& b) { return (b - b.adjoint()) / qm::cplx(0, 2); }

struct HcrWork {
    const Mat* rho;
    RMat sqrt_c;
    RMat c;
    int p;
    std::vector<Mat> basis;
    RMat a;          // constraint matrix, p x d^2
    RMat nullspace;  // d^2 x m, orthonormal columns
    std::vector<Eigen::VectorXd> particular; // per-parameter coefficients

    std::vector<Mat> ops(const RMat& y) const {
        std::vector<Mat> x(static_cast<std::size_t>(p));
        for (int j = 0; j < p; ++j) {
            Eigen::VectorXd c_j =
                particular[static_cast<std::size_t>(j)] + nullspace * y.row(j).transpose();
            Mat m = Mat::Zero(rho->rows(), rho->cols());
            for (Eigen::Index a_i = 0; a_i < c_j.size(); ++a_i) {
                m += c_j[a_i] * basis[static_cast<std::size_t>(a_i)];
            }
            x[static_cast<std::size_t>(j)] = m;
        }
        return x;
    }

    double objective(const std::vector<Mat>& x, RMat* grad_y) const {
        Mat z(p, p);
        for (int i = 0; i < p; ++i) {
            for (int j = 0; j < p; ++j) {
                z(i, j) = (*rho * x[static_cast<std::size_t>(i)] *
                           x[static_cast<std::size_t>(j)])
                              .trace();
            }
        }
        const RMat re_z = z.real();
        const RMat im_z = z.imag();
        const RMat k = sqrt_c * im_z * sqrt_c;
        Eigen::JacobiSVD<RMat> svd(k, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const double trace_norm = svd.singularValues().sum();
        const double smooth = (c.array() * re_z.array()).sum();

        if (grad_y) {
            const RMat w = svd.matrixU() * svd.matrixV().transpose();
            const RMat m = sqrt_c * w * sqrt_c;
            grad_y->resize(p, nullspace.cols());
            for (int kparam = 0; kparam < p; ++kparam) {
                Mat g = Mat::Zero(rho->rows(), rho->cols());
                for (int j = 0; j < p; ++j) {
                    const Mat& xj = x[static_cast<std::size_t>(j)];
                    g += c(kparam, j) * (*rho * xj + xj * *rho);
                    g += m(kparam, j) * imag_herm(xj * *rho);
                    g += m(j, kparam) * imag_herm(*rho * xj);
                }
                // project Hermitian gradient onto nullspace coordinates
                for (Eigen::Index col = 0; col < nullspace.cols(); ++col) {
                    Mat dir = Mat::Zero(rho->rows(), rho->cols());
                    for (Eigen::Index a_i = 0; a_i < a.cols(); ++a_i) {
                        dir += nullspace(a_i, col) *
                               basis[static_cast<std::size_t>(a_i)];
                    }
                    (*grad_y)(kparam, col) = (g * dir).trace().real();
                }
            }
        }
        return smooth + trace_norm;
    }
};

} // namespace

HcrResult hcr_bound(const QuantumStatFamily& fam, const RVec& theta,
                    const RMat& cost, const HcrOptions& opts) {
    const int p = fam.param_count;
    if (cost.rows() != p || cost.cols() != p) {
        throw std::invalid_argument("hcr_bound: cost matrix dimension");
    }
    if ((cost - cost.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
        throw std::invalid_argument("hcr_bound: cost matrix must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<RMat> ces(cost);
    if (ces.eigenvalues().minCoeff() < -1e-10) {
        throw std::invalid_argument("hcr_bound: cost matrix must be PSD");
    }
    const DensityMatrix rho = fam.rho(theta);
    const Eigen::Index d = rho.dim();

    HcrWork w;
    w.rho = &rho.matrix();
    w.c = cost;
    w.sqrt_c = ces.eigenvectors() *
               ces.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
               ces.eigenvectors().transpose();
    w.p = p;
    w.basis = qm::hermitian_basis(d);

    std::vector<Mat> drho(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) {
        drho[static_cast<std::size_t>(i)] = fam.drho(theta, i).matrix();
    }
    const Eigen::Index nb = static_cast<Eigen::Index>(w.basis.size());
    w.a.resize(p, nb);
    for (int i = 0; i < p; ++i) {
        for (Eigen::Index a_i = 0; a_i < nb; ++a_i) {
            w.a(i, a_i) = (drho[static_cast<std::size_t>(i)] *
                           w.basis[static_cast<std::size_t>(a_i)])
                              .trace()
                              .real();
        }
    }
    Eigen::JacobiSVD<RMat> asvd(w.a,
                                Eigen::ComputeFullU | Eigen::ComputeFullV);
    const double smax = asvd.singularValues()(0);
    int rank = 0;
    for (Eigen::Index i = 0; i < asvd.singularValues().size(); ++i) {
        if (asvd.singularValues()(i) > 1e-12 * smax) ++rank;
    }
    if (rank < p) {
        throw std::domain_error(
            "hcr_bound: locally unbiased constraints are rank deficient "
            "(non-identifiable parameters)");
    }
    w.nullspace = asvd.matrixV().rightCols(nb - rank);
    w.particular.resize(static_cast<std::size_t>(p));
    for (int j = 0; j < p; ++j) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(p);
        e[j] = 1.0;
        w.particular[static_cast<std::size_t>(j)] = asvd.solve(e);
    }

    // The SLD-CR optimizer X = F^-1 L is the canonical feasible start.
    RMat y0 = RMat::Zero(p, w.nullspace.cols());
    {
        FisherMatrix fq = qfi_matrix(fam, theta);
        const RMat finv = fq.inverse();
        std::vector<Mat> l(static_cast<std::size_t>(p));
        for (int i = 0; i < p; ++i) {
            l[static_cast<std::size_t>(i)] =
                sld(rho, fam.drho(theta, i)).matrix();
        }
        for (int j = 0; j < p; ++j) {
            Mat xj = Mat::Zero(d, d);
            for (int i = 0; i < p; ++i) {
                xj += finv(j, i) * l[static_cast<std::size_t>(i)];
            }
            // coefficients of xj in the Hermitian basis, then the nullspace
            // component relative to the particular solution
            Eigen::VectorXd cj(nb);
            for (Eigen::Index a_i = 0; a_i < nb; ++a_i) {
                cj[a_i] = (xj * w.basis[static_cast<std::size_t>(a_i)])
                              .trace()
                              .real();
            }
            y0.row(j) =
                (w.nullspace.transpose() *
                 (cj - w.particular[static_cast<std::size_t>(j)]))
                    .transpose();
        }
    }

    CounterRng rng(opts.seed);
    HcrResult best;
    best.value = std::numeric_limits<double>::infinity();
    const double scale = std::max(1.0, y0.cwiseAbs().maxCoeff());
    for (int restart = 0; restart < std::max(1, opts.restarts); ++restart) {
        RMat y = y0;
        if (restart > 0) {
            for (Eigen::Index i = 0; i < y.rows(); ++i) {
                for (Eigen::Index j = 0; j < y.cols(); ++j) {
                    y(i, j) += scale * 0.5 * (rng.next_double() - 0.5);
                }
            }
        }
        RMat grad;
        double f = w.objective(w.ops(y), &grad);
        double step = 0.1 * scale;
        double best_local = f;
        int stall = 0;
        for (int it = 0; it < opts.max_iters; ++it) {
            const double gnorm = grad.norm();
            if (gnorm < 1e-14) break;
            bool moved = false;
            for (int half = 0; half < 40; ++half) {
                RMat y_try = y - (step / gnorm) * grad;
                const double f_try = w.objective(w.ops(y_try), nullptr);
                if (f_try < f) {
                    y = y_try;
                    f = f_try;
                    moved = true;
                    step *= 1.3;
                    break;
                }
                step *= 0.5;
            }
            if (!moved) break;
            f = w.objective(w.ops(y), &grad);
            if (f < best_local - opts.stall_tol) {
                best_local = f;
                stall = 0;
            } else if (++stall >= opts.stall_window) {
                break;
            }
        }
        if (f < best.value) {
            best.value = f;
            best.x_ops = w.ops(y);
            best.converged = true;
        }
    }
    return best;
}

} // namespace hbench::fisher
