#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "hbench/optim.hpp"
#include "hbench/qm.hpp"

namespace hbench::noisy {

using qm::cplx;
using qm::Mat;

/// theta-parametrized CPTP map given by Kraus operators and their
/// derivatives. Construction-time validation at a reference point checks
/// sum K^dag K = 1 (1e-9) and the derivative of that condition (1e-7).
struct KrausChannel {
    int dim = 0;
    int kraus_count = 0;
    std::function<std::vector<Mat>(double)> kraus;
    std::function<std::vector<Mat>(double)> dkraus;

    void validate(double theta) const;

    /// Output state of the channel with ancilla, (E_theta x id)(psi psi^dag),
    /// as a quantum family over theta. `psi` lives on system x ancilla with
    /// ancilla dimension `dim`.
    qm::Mat apply_with_ancilla(double theta, const qm::Vec& psi) const;
};

/// The Kraus-representation pair alpha = sum D_k^dag D_k,
/// beta = sum K_k^dag D_k with D_k = dK_k - i sum_j h_kj K_j.
struct AlphaBeta {
    qm::HermitianOperator alpha;
    Mat beta;
    double alpha_norm = 0.0; // largest eigenvalue of alpha (PSD)
    double beta_norm = 0.0;  // largest singular value of beta
};

AlphaBeta alpha_beta(const KrausChannel& ch, double theta, const Mat& h);

struct MinimizeOptions {
    int restarts = 8;
    int max_iters = 2000;
    double stall_tol = 1e-8;
    int stall_window = 100;
    std::uint64_t seed = 0xA11CEULL;
};

/// min_h 4(n ||alpha|| + n(n-1) ||beta||^2): parallel-scheme bound on the
/// output QFI of n gate uses.
double minimize_parallel_bound(const KrausChannel& ch, double theta, long n,
                               const MinimizeOptions& opts = {});

/// Sequential-adaptive bound 4 a^(n), a^(i+1) = min_h [a^(i) + ||alpha|| +
/// 2 ||beta|| sqrt(a^(i))], a^(0) = 0.
double adaptive_bound_iterative(const KrausChannel& ch, double theta, long n,
                                const MinimizeOptions& opts = {});

/// The two closed-form adaptive bounds, each minimized over h independently:
///   4(n||a|| + n(n-1)||b|| sqrt(||a||)) and
///   4(n||a|| + n(n-1)||b||^2 + (||a||-||b||^2) n log n).
std::pair<double, double> adaptive_bound_closed(const KrausChannel& ch,
                                                double theta, long n,
                                                const MinimizeOptions& opts = {});

/// min_h ||beta(h)|| (convex); zero iff the generator lies in the Kraus span.
double minimize_beta_norm(const KrausChannel& ch, double theta,
                          const MinimizeOptions& opts = {});

struct HnksResult {
    bool violates_span = false;
    double residual = 0.0; // Frobenius distance of i sum K^dag dK to the span
};

/// Hamiltonian-in-Kraus-span test: least-squares projection of
/// i sum_k K_k^dag dK_k onto span_H{K_i^dag K_j}; violation means beta = 0
/// is infeasible and fast scaling survives the noise.
HnksResult hnks_test(const KrausChannel& ch, double theta);

/// For beta-feasible channels: 4 min{||alpha(h)|| : beta(h) = 0}, the
/// per-gate coefficient of the asymptotically linear QFI bound.
double asymptotic_linear_coeff(const KrausChannel& ch, double theta,
                               const MinimizeOptions& opts = {});

/// Phase gate e^{i theta sigma_z} preceded by x-dephasing with weight p:
/// Krauses sqrt(p) e^{i theta sigma_z}, sqrt(1-p) e^{i theta sigma_z} sigma_x.
KrausChannel dephasing_channel(double p);

/// Single-photon dual-rail interferometer with transmission eta on the
/// space {upper, lower, vacuum}; the phase acts on the upper rail.
KrausChannel lossy_interferometer_channel(double eta);

/// Unitary channel e^{i theta L}.
KrausChannel unitary_channel(const qm::HermitianOperator& generator);

/// QFI of the channel output with ancilla for input |psi> (system x ancilla).
double channel_output_qfi(const KrausChannel& ch, double theta,
                          const qm::Vec& psi);

struct QecDemoResult {
    Mat logical;             // recovered 2x2 logical density matrix
    double off_diag_factor;  // |rho_01| / |a b*|
};

/// Two-qubit repetition code against the dephasing channel: encode
/// a|00> + b|11>, apply (E_theta x id), recover with the phase-matched
/// Krauses at theta0, report the logical state and off-diagonal damping.
QecDemoResult qec_dephasing_demo(double p, double theta0, double theta,
                                 cplx a = cplx(1 / std::sqrt(2.0), 0),
                                 cplx b = cplx(1 / std::sqrt(2.0), 0));

/// Mean-squared error of the squeezed-vacuum + coherent interferometer by
/// error propagation on the output photon-number difference.
double squeezed_mse(double nbar, double r, double phi, double eta,
                    double theta);

/// Quantum advantage over the equal-output-energy coherent strategy:
/// -10 log10(eta e^{-2r} + 1 - eta) in dB.
double quantum_advantage_db(double r, double eta);

/// Squeezing parameter r from the factor e^{-2r}.
double squeeze_param_from_factor(double e2r);

/// Channel from a JSON description {dim, theta0, kraus, dkraus} where each
/// matrix is a row-major array of [re, im] pairs. The returned channel is
/// tabulated at theta0.
KrausChannel channel_from_json(const std::string& json_text, double* theta0);

} // namespace hbench::noisy
