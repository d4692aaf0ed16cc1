#pragma once

#include <vector>

#include "hbench/fisher.hpp"
#include "hbench/multi.hpp"
#include "hbench/noisy.hpp"
#include "hbench/qm.hpp"
#include "hbench/rng.hpp"

namespace hbench::test {

using qm::cplx;
using qm::Mat;
using qm::Vec;

inline Vec random_ket(CounterRng& rng, Eigen::Index d) {
    Vec v(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        v[i] = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
    }
    v /= v.norm();
    return v;
}

inline Mat random_hermitian(CounterRng& rng, Eigen::Index d,
                            double scale = 1.0) {
    Mat m(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            m(i, j) = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
        }
    }
    return scale * 0.5 * (m + m.adjoint().eval());
}

inline Mat random_unitary(CounterRng& rng, Eigen::Index d) {
    Mat m(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            m(i, j) = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
        }
    }
    const Eigen::HouseholderQR<Mat> qr(m);
    Mat q = qr.householderQ();
    // fix phases so that the distribution is Haar-like
    const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < d; ++i) {
        const cplx rii = r(i, i);
        if (std::abs(rii) > 0) q.col(i) *= rii / std::abs(rii);
    }
    return q;
}

inline qm::DensityMatrix random_density(CounterRng& rng, Eigen::Index d,
                                        int rank = 0) {
    if (rank <= 0) rank = static_cast<int>(d);
    Mat m = Mat::Zero(d, d);
    double total = 0.0;
    std::vector<double> w(static_cast<std::size_t>(rank));
    for (auto& wi : w) {
        wi = rng.uniform(0.05, 1.0);
        total += wi;
    }
    for (int r = 0; r < rank; ++r) {
        const Vec v = random_ket(rng, d);
        m += (w[static_cast<std::size_t>(r)] / total) * v * v.adjoint();
    }
    m = 0.5 * (m + m.adjoint().eval());
    return qm::DensityMatrix(m);
}

/// Random POVM with `n` PSD elements summing to the identity.
inline qm::Povm random_povm(CounterRng& rng, Eigen::Index d, int n) {
    std::vector<Mat> raw;
    Mat sum = Mat::Zero(d, d);
    for (int i = 0; i < n; ++i) {
        Mat g(d, d);
        for (Eigen::Index r = 0; r < d; ++r) {
            for (Eigen::Index c = 0; c < d; ++c) {
                g(r, c) = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
            }
        }
        Mat a = g.adjoint() * g;
        raw.push_back(a);
        sum += a;
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(sum);
    const Mat isqrt = es.eigenvectors() *
                      es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                      es.eigenvectors().adjoint();
    std::vector<qm::HermitianOperator> elements;
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) {
        Mat e = isqrt * raw[static_cast<std::size_t>(i)] * isqrt;
        e = 0.5 * (e + e.adjoint().eval());
        elements.emplace_back(e, 1e-10);
        labels.push_back("m" + std::to_string(i));
    }
    return qm::Povm(std::move(elements), std::move(labels));
}

/// Full-rank qubit family rho_theta = (1-eps) U_theta |psi><psi| U^dag + eps/2
/// with U_theta = e^{i theta G}; analytic derivative.
inline fisher::QuantumStatFamily random_qubit_family(CounterRng& rng,
                                                     double eps = 0.2) {
    const Mat g = random_hermitian(rng, 2);
    const Vec psi0 = random_ket(rng, 2);
    auto u_of = [g](double th) {
        Eigen::SelfAdjointEigenSolver<Mat> es(g);
        Vec ph(2);
        for (int i = 0; i < 2; ++i) {
            ph[i] = std::polar(1.0, th * es.eigenvalues()[i]);
        }
        return Mat(es.eigenvectors() * ph.asDiagonal() *
                   es.eigenvectors().adjoint());
    };
    fisher::QuantumStatFamily fam;
    fam.param_count = 1;
    fam.rho = [u_of, psi0, eps](const fisher::RVec& th) {
        const Mat u = u_of(th[0]);
        Mat m = (1.0 - eps) * (u * psi0) * (u * psi0).adjoint() +
                eps * 0.5 * qm::identity(2);
        return qm::DensityMatrix(0.5 * (m + m.adjoint().eval()));
    };
    fam.drho = [u_of, g, psi0, eps](const fisher::RVec& th, int) {
        const Mat u = u_of(th[0]);
        const Vec v = u * psi0;
        const Vec dv = cplx(0, 1) * g * v;
        Mat d = (1.0 - eps) * (dv * v.adjoint() + v * dv.adjoint());
        return qm::HermitianOperator(0.5 * (d + d.adjoint().eval()),
                                     1e-10);
    };
    return fam;
}

/// Pure family U_theta |psi0> with analytic derivatives for an arbitrary
/// generator set (multiparameter).
inline fisher::QuantumStatFamily pure_family_from_generators(
    const multi::GeneratorSet& gens, const Vec& psi0) {
    fisher::QuantumStatFamily fam;
    fam.param_count = gens.param_count();
    fam.rho = [gens, psi0](const fisher::RVec& th) {
        const Vec v = multi::evolution(gens, th) * psi0;
        return qm::DensityMatrix(v * v.adjoint());
    };
    fam.drho = [gens, psi0](const fisher::RVec& th, int i) {
        const Vec v = multi::evolution(gens, th) * psi0;
        const Vec dv = multi::evolution_derivative(gens, th, i) * psi0;
        const Mat d = dv * v.adjoint() + v * dv.adjoint();
        return qm::HermitianOperator(0.5 * (d + d.adjoint().eval()), 1e-10);
    };
    return fam;
}

/// Random CPTP channel with noise-before-phase theta dependence:
/// K_k(theta) = A_k e^{i theta G}, {A_k} a random isometry decomposition.
inline noisy::KrausChannel random_channel(CounterRng& rng, int dim,
                                          int kraus_count) {
    // random isometry from C^d to C^{d * r} via QR of a random matrix
    Mat big(dim * kraus_count, dim);
    for (Eigen::Index i = 0; i < big.rows(); ++i) {
        for (Eigen::Index j = 0; j < big.cols(); ++j) {
            big(i, j) = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
        }
    }
    Eigen::HouseholderQR<Mat> qr(big);
    const Mat q = Mat(qr.householderQ()).leftCols(dim);
    std::vector<Mat> a(static_cast<std::size_t>(kraus_count));
    for (int k = 0; k < kraus_count; ++k) {
        a[static_cast<std::size_t>(k)] = q.middleRows(k * dim, dim);
    }
    const Mat g = random_hermitian(rng, dim);
    noisy::KrausChannel ch;
    ch.dim = dim;
    ch.kraus_count = kraus_count;
    ch.kraus = [a, g](double th) {
        Eigen::SelfAdjointEigenSolver<Mat> es(g);
        Vec ph(g.rows());
        for (Eigen::Index i = 0; i < g.rows(); ++i) {
            ph[i] = std::polar(1.0, th * es.eigenvalues()[i]);
        }
        const Mat u = es.eigenvectors() * ph.asDiagonal() *
                      es.eigenvectors().adjoint();
        std::vector<Mat> k(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) k[i] = a[i] * u;
        return k;
    };
    ch.dkraus = [a, g](double th) {
        Eigen::SelfAdjointEigenSolver<Mat> es(g);
        Vec ph(g.rows());
        for (Eigen::Index i = 0; i < g.rows(); ++i) {
            ph[i] = std::polar(1.0, th * es.eigenvalues()[i]);
        }
        const Mat u = es.eigenvectors() * ph.asDiagonal() *
                      es.eigenvectors().adjoint();
        std::vector<Mat> k(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            k[i] = a[i] * (cplx(0, 1) * g * u);
        }
        return k;
    };
    return ch;
}

} // namespace hbench::test
