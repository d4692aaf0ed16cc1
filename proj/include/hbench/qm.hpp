#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace hbench::qm {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;
using cplx = std::complex<double>;

inline constexpr double kHermTol = 1e-12;
inline constexpr double kEigFloor = -1e-10;
inline constexpr double kTraceTol = 1e-10;

/// Largest absolute entry; the max-norm used in all construction checks.
double max_abs(const Mat& m);

void check_finite(const Mat& m, const char* what);

/// Validated Hermitian operator: ||M - M^dag||_max <= 1e-12 at construction.
/// The stored matrix is exactly Hermitian ((M + M^dag)/2).
class HermitianOperator {
  public:
    explicit HermitianOperator(Mat m, double tol = kHermTol);

    const Mat& matrix() const { return m_; }
    Eigen::Index dim() const { return m_.rows(); }

  private:
    Mat m_;
};

/// Normalized state vector: | ||psi||^2 - 1 | <= 1e-12 at construction.
class Ket {
  public:
    explicit Ket(Vec amplitudes, double tol = kHermTol);

    const Vec& amplitudes() const { return v_; }
    Eigen::Index dim() const { return v_.size(); }
    Mat projector() const { return v_ * v_.adjoint(); }

  private:
    Vec v_;
};

/// Density matrix: Hermitian, eigenvalues >= -1e-10, trace 1 +- 1e-10.
class DensityMatrix {
  public:
    explicit DensityMatrix(Mat m);
    explicit DensityMatrix(const Ket& psi) : DensityMatrix(psi.projector()) {}

    const Mat& matrix() const { return m_; }
    Eigen::Index dim() const { return m_.rows(); }

  private:
    Mat m_;
};

/// Positive operator-valued measure: elements PSD (to 1e-10), summing to the
/// identity (to 1e-9 in max-norm).
class Povm {
  public:
    Povm(std::vector<HermitianOperator> elements,
         std::vector<std::string> labels);

    const std::vector<HermitianOperator>& elements() const { return el_; }
    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t size() const { return el_.size(); }

    /// Born-rule outcome probabilities Tr(M_x rho).
    Eigen::VectorXd probabilities(const DensityMatrix& rho) const;

  private:
    std::vector<HermitianOperator> el_;
    std::vector<std::string> labels_;
};

/// Kronecker product; dimensions multiply.
Mat tensor(const Mat& a, const Mat& b);
Vec tensor(const Vec& a, const Vec& b);

/// Trace over the factors NOT listed in `keep`. `dims` are the tensor factor
/// dimensions, ordered as in the Kronecker product; their product must equal
/// the matrix dimension. The factors in `keep` retain their relative order.
Mat partial_trace(const Mat& m, const std::vector<int>& dims,
                  const std::vector<int>& keep);

struct EigResult {
    RVec eigenvalues;  // ascending
    Mat eigenvectors;  // columns, orthonormal
};

/// Eigendecomposition of a Hermitian operator, eigenvalues ascending.
EigResult eig_hermitian(const HermitianOperator& h);

/// Difference of the extreme eigenvalues, lambda_max - lambda_min >= 0.
double spectral_span(const HermitianOperator& h);

/// Pauli matrices and the 2x2 identity.
Mat pauli_x();
Mat pauli_y();
Mat pauli_z();
Mat identity(Eigen::Index d);

/// Orthonormal basis of d x d Hermitian matrices under Tr(A B):
/// d diagonal units, then (E_ij + E_ji)/sqrt2 and i(E_ji - E_ij)/sqrt2.
std::vector<Mat> hermitian_basis(Eigen::Index d);

/// Expand real coefficients in the hermitian_basis ordering into a matrix.
Mat from_hermitian_basis(const Eigen::VectorXd& coeffs, Eigen::Index d);

} // namespace hbench::qm
