#pragma once

#include <cstdint>
#include <functional>

#include "hbench/qm.hpp"

namespace hbench::fisher {

using qm::DensityMatrix;
using qm::HermitianOperator;
using qm::Mat;
using qm::RMat;
using qm::RVec;

/// Parametric outcome distribution p(x|theta) with derivative access.
///
/// `prob` must return a valid probability vector at every queried theta
/// (checked on evaluation). If `dprob` is not supplied, derivatives use
/// central finite differences with step fd_step * max(1, |theta_i|).
struct ProbModel {
    int outcome_count = 0;
    std::function<RVec(const RVec& theta)> prob;
    std::function<RVec(const RVec& theta, int i)> dprob; // optional
    double fd_step = 1e-6;

    RVec probabilities(const RVec& theta) const;
    RVec derivative(const RVec& theta, int i) const;
};

/// Scalar-parameter convenience constructor.
ProbModel make_scalar_model(int outcomes,
                            std::function<RVec(double)> prob,
                            std::function<RVec(double)> dprob = nullptr);

/// Parametric family of density matrices with derivative access.
/// drho(theta, i) must be Hermitian and traceless (checked to 1e-8).
struct QuantumStatFamily {
    int param_count = 1;
    std::function<DensityMatrix(const RVec& theta)> rho;
    std::function<HermitianOperator(const RVec& theta, int i)> drho;
};

/// Symmetric PSD Fisher information matrix (PSD checked to 1e-9).
class FisherMatrix {
  public:
    explicit FisherMatrix(RMat entries);

    const RMat& matrix() const { return m_; }
    double scalar() const;      // 1x1 only
    RMat inverse() const;       // eigendecomposition, condition guard 1e12
    double trace_inverse() const;

  private:
    RMat m_;
};

/// Classical Fisher information matrix F_ij = sum_x (1/p) d_i p d_j p.
/// Outcomes with p = 0 and dp = 0 contribute zero; p = 0 with dp != 0
/// raises a singular-model error.
FisherMatrix classical_fi(const ProbModel& model, const RVec& theta);
double classical_fi_scalar(const ProbModel& model, double theta);

/// Symmetric logarithmic derivative: solves drho = (L rho + rho L)/2 in the
/// eigenbasis of rho. Matrix elements on the kernel block (p_i + p_j below
/// eps_kernel) are set to zero when the corresponding drho element is
/// negligible; otherwise the family changes rank there and the SLD is not
/// defined, which raises an error.
HermitianOperator sld(const DensityMatrix& rho, const HermitianOperator& drho,
                      double eps_kernel = 1e-10);

/// Quantum Fisher information matrix F_ij = Re Tr(rho L_i L_j).
FisherMatrix qfi_matrix(const QuantumStatFamily& fam, const RVec& theta);
double qfi_scalar(const QuantumStatFamily& fam, double theta);

/// QFI of a pure family from |psi> and |dpsi>: 4(<dpsi|dpsi> - |<dpsi|psi>|^2),
/// and its multiparameter version. Used as the second route in dual-path
/// checks against the SLD computation.
double qfi_pure(const qm::Vec& psi, const qm::Vec& dpsi);
RMat qfi_pure_matrix(const qm::Vec& psi, const std::vector<qm::Vec>& dpsi);

/// Error propagation: Delta^2 theta = Var(A) / (d<A>/dtheta)^2.
double error_propagation(double var_a, double dmean_dtheta);

/// Variance bound from the generator variance: 1 / (4 Var(H)).
double mandelstam_bound(double var_h);

/// Van Trees bound 1/(avg_fi + prior_info).
double van_trees_bound(double avg_fi, double prior_info);

/// Prior information I = int (1/p)(dp/dtheta)^2 dtheta by quadrature.
double prior_information(const std::function<double(double)>& density,
                         const std::function<double(double)>& ddensity,
                         double lo, double hi, double abs_tol = 1e-9);

struct HcrOptions {
    int restarts = 8;
    int max_iters = 2000;
    int stall_window = 50;      // converged when no 1e-9 progress over this
    double stall_tol = 1e-9;
    std::uint64_t seed = 20200707ULL;
};

struct HcrResult {
    double value = 0.0;
    bool converged = true;
    std::vector<Mat> x_ops; // optimal locally-unbiased observable vector
};

/// Holevo Cramer-Rao bound: minimum over Hermitian vectors X with
/// Tr(d_i rho X_j) = delta_ij of tr(C ReZ[X]) + ||sqrt(C) ImZ[X] sqrt(C)||_1,
/// Z[X]_ij = Tr(rho X_i X_j). Convex; solved by projected subgradient
/// descent on the affine constraint set with multiple starts.
HcrResult hcr_bound(const QuantumStatFamily& fam, const RVec& theta,
                    const RMat& cost, const HcrOptions& opts = {});

} // namespace hbench::fisher
