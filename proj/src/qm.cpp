#include "hbench/qm.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace hbench::qm {

double max_abs(const Mat& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void check_finite(const Mat& m, const char* what) {
    if (!m.allFinite()) {
        throw std::invalid_argument(std::string(what) +
                                    ": entries must be finite");
    }
}

HermitianOperator::HermitianOperator(Mat m, double tol) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("HermitianOperator: matrix must be square");
    }
    check_finite(m, "HermitianOperator");
    const double asym = max_abs(m - m.adjoint());
    if (asym > tol) {
        throw std::invalid_argument(
            "HermitianOperator: ||M - M^dag||_max = " + std::to_string(asym) +
            " exceeds tolerance");
    }
    m_ = 0.5 * (m + m.adjoint().eval());
}

Ket::Ket(Vec amplitudes, double tol) : v_(std::move(amplitudes)) {
    check_finite(v_, "Ket");
    const double n2 = v_.squaredNorm();
    if (std::abs(n2 - 1.0) > tol) {
        throw std::invalid_argument("Ket: ||psi||^2 = " + std::to_string(n2) +
                                    " is not normalized");
    }
}

DensityMatrix::DensityMatrix(Mat m) {
    HermitianOperator h(std::move(m));
    m_ = h.matrix();
    const double tr = m_.trace().real();
    if (std::abs(tr - 1.0) > kTraceTol) {
        throw std::invalid_argument("DensityMatrix: trace = " +
                                    std::to_string(tr));
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(m_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < kEigFloor) {
        throw std::invalid_argument(
            "DensityMatrix: negative eigenvalue " +
            std::to_string(es.eigenvalues().minCoeff()));
    }
}

Povm::Povm(std::vector<HermitianOperator> elements,
           std::vector<std::string> labels)
    : el_(std::move(elements)), labels_(std::move(labels)) {
    if (el_.empty()) throw std::invalid_argument("Povm: no elements");
    if (labels_.size() != el_.size()) {
        throw std::invalid_argument("Povm: one label per element required");
    }
    const Eigen::Index d = el_.front().dim();
    Mat sum = Mat::Zero(d, d);
    for (const auto& e : el_) {
        if (e.dim() != d) {
            throw std::invalid_argument("Povm: mixed element dimensions");
        }
        Eigen::SelfAdjointEigenSolver<Mat> es(e.matrix(),
                                              Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -1e-10) {
            throw std::invalid_argument("Povm: element not PSD");
        }
        sum += e.matrix();
    }
    if (max_abs(sum - Mat::Identity(d, d)) > 1e-9) {
        throw std::invalid_argument("Povm: elements do not sum to identity");
    }
}

Eigen::VectorXd Povm::probabilities(const DensityMatrix& rho) const {
    Eigen::VectorXd p(static_cast<Eigen::Index>(el_.size()));
    for (std::size_t x = 0; x < el_.size(); ++x) {
        p[static_cast<Eigen::Index>(x)] =
            (el_[x].matrix() * rho.matrix()).trace().real();
    }
    return p;
}

Mat tensor(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
        }
    }
    return out;
}

Vec tensor(const Vec& a, const Vec& b) {
    Vec out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a[i] * b;
    }
    return out;
}

Mat partial_trace(const Mat& m, const std::vector<int>& dims,
                  const std::vector<int>& keep) {
    const int nf = static_cast<int>(dims.size());
    long total = 1;
    for (int d : dims) {
        if (d <= 0) throw std::invalid_argument("partial_trace: bad factor");
        total *= d;
    }
    if (total != m.rows() || m.rows() != m.cols()) {
        throw std::invalid_argument(
            "partial_trace: factor dimensions do not match matrix");
    }
    std::vector<bool> kept(nf, false);
    for (int k : keep) {
        if (k < 0 || k >= nf) {
            throw std::invalid_argument("partial_trace: keep index range");
        }
        kept[static_cast<std::size_t>(k)] = true;
    }
    long dk = 1, dt = 1;
    for (int f = 0; f < nf; ++f) (kept[f] ? dk : dt) *= dims[f];

    // Strides of each factor in the flat row index.
    std::vector<long> stride(nf, 1);
    for (int f = nf - 2; f >= 0; --f) stride[f] = stride[f + 1] * dims[f + 1];

    // Enumerate multi-indices of the kept and traced subsystems.
    auto offsets = [&](bool want_kept) {
        std::vector<long> off{0};
        for (int f = 0; f < nf; ++f) {
            if (kept[f] != want_kept) continue;
            std::vector<long> next;
            next.reserve(off.size() * static_cast<std::size_t>(dims[f]));
            for (long base : off) {
                for (int i = 0; i < dims[f]; ++i) {
                    next.push_back(base + i * stride[f]);
                }
            }
            off = std::move(next);
        }
        return off;
    };
    const std::vector<long> keep_off = offsets(true);
    const std::vector<long> trace_off = offsets(false);

    Mat out = Mat::Zero(dk, dk);
    for (long r = 0; r < dk; ++r) {
        for (long c = 0; c < dk; ++c) {
            cplx s = 0.0;
            for (long t : trace_off) {
                s += m(keep_off[static_cast<std::size_t>(r)] + t,
                       keep_off[static_cast<std::size_t>(c)] + t);
            }
            out(r, c) = s;
        }
    }
    return out;
}

EigResult eig_hermitian(const HermitianOperator& h) {
    Eigen::SelfAdjointEigenSolver<Mat> es(h.matrix());
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("eig_hermitian: solver did not converge");
    }
    return EigResult{es.eigenvalues(), es.eigenvectors()};
}

double spectral_span(const HermitianOperator& h) {
    Eigen::SelfAdjointEigenSolver<Mat> es(h.matrix(), Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff() - es.eigenvalues().minCoeff();
}

Mat pauli_x() {
    Mat m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Mat pauli_y() {
    Mat m(2, 2);
    m << 0, cplx(0, -1), cplx(0, 1), 0;
    return m;
}

Mat pauli_z() {
    Mat m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Mat identity(Eigen::Index d) { return Mat::Identity(d, d); }

std::vector<Mat> hermitian_basis(Eigen::Index d) {
    std::vector<Mat> basis;
    basis.reserve(static_cast<std::size_t>(d * d));
    const double s = 1.0 / std::sqrt(2.0);
    for (Eigen::Index i = 0; i < d; ++i) {
        Mat e = Mat::Zero(d, d);
        e(i, i) = 1.0;
        basis.push_back(e);
    }
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = i + 1; j < d; ++j) {
            Mat e = Mat::Zero(d, d);
            e(i, j) = s;
            e(j, i) = s;
            basis.push_back(e);
            Mat o = Mat::Zero(d, d);
            o(i, j) = cplx(0, -s);
            o(j, i) = cplx(0, s);
            basis.push_back(o);
        }
    }
    return basis;
}

Mat from_hermitian_basis(const Eigen::VectorXd& coeffs, Eigen::Index d) {
    const std::vector<Mat> basis = hermitian_basis(d);
    if (coeffs.size() != static_cast<Eigen::Index>(basis.size())) {
        throw std::invalid_argument("from_hermitian_basis: dimension mismatch");
    }
    Mat m = Mat::Zero(d, d);
    for (std::size_t a = 0; a < basis.size(); ++a) {
        m += coeffs[static_cast<Eigen::Index>(a)] * basis[a];
    }
    return m;
}

} // namespace hbench::qm
