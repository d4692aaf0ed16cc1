#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hbench/fisher.hpp"
#include "hbench/qm.hpp"

namespace hbench::multi {

using fisher::RVec;
using qm::Mat;

/// Generators of a multiparameter unitary family U_theta = e^{i theta . L}.
struct GeneratorSet {
    std::vector<qm::HermitianOperator> generators;
    int param_count() const { return static_cast<int>(generators.size()); }
    Eigen::Index dim() const { return generators.front().dim(); }
};

/// One strategy/cost row of a comparison table.
struct CostScenario {
    std::string model;
    std::string strategy; // SEP-CR | JNT-CR | SEP-MM | JNT-MM | ...
    int p = 1;
    double k = 1, n = 1, total_n = 1;
    double value = 0.0;
};

/// SU(2) spin-1/2 generators sigma/2.
GeneratorSet su2_generators();
/// Multi-phase generators |i><i|, i = 1..p, on C^{p+1} (arm 0 is reference).
GeneratorSet multiphase_generators(int p);
/// Field at two points sensed by spin-1/2: |i><i| x sigma_z/2 (the spin-z
/// convention that makes the single-parameter spans equal to 1).
GeneratorSet two_point_generators();

/// U_theta and its parameter derivatives for a generator set.
Mat evolution(const GeneratorSet& gens, const RVec& theta);
Mat evolution_derivative(const GeneratorSet& gens, const RVec& theta, int i);

enum class Controls { Identity, InverseEvolution };

/// QFI matrix of the sequential-adaptive pure-state strategy
/// |psi_theta> = V (U_theta x 1) ... V (U_theta x 1) |probe> at theta0,
/// with V = 1 or V = U_theta0^dag x 1. Derivatives by the product rule.
fisher::FisherMatrix adaptive_qfi(const GeneratorSet& gens, const RVec& theta0,
                                  int n, Controls controls,
                                  const qm::Vec& probe);

/// Joint multi-phase probe (the CR-optimal superposition over arms) as an
/// explicit pure family on C^{p+1}; used to cross-check the closed forms.
fisher::QuantumStatFamily multiphase_joint_family(int p, long n);

/// Multi-phase cost table: CR rows at (k, n), minimax rows at total_n.
std::vector<CostScenario> multiphase_costs(int p, double k, double n,
                                           double total_n);

/// The printed ansatz cost constant at exponents (3/2, sqrt p):
/// p (1 + 2 sqrt p)^2 sqrt p (4p + 2 sqrt p - 1) / (8 sqrt p - 4).
double simplex_ansatz_closed_form(int p);

/// Dirichlet energy of the simplex ansatz (prod mu_i)^a (1 - sum mu)^b
/// by Beta-integral identities; requires a, b > 1/2.
double simplex_ansatz_energy(int p, double a_exp, double b_exp);

/// SU(2) cost table at half-angle theta_norm (the gate point is
/// theta = (0, 0, 2 theta_norm); with sigma/2 generators the single-gate
/// QFI diagonal is then (sinc^2, sinc^2, 1) in theta_norm).
std::vector<CostScenario> su2_costs(double n, double k, double theta_norm,
                                    double total_n);

/// Two-point field cost table plus the rotated-generator spans.
std::vector<CostScenario> two_point_field_costs(double k, double n,
                                                double total_n);
std::pair<double, double> two_point_rotated_spans();

struct SearchOptions {
    int restarts = 12;
    std::uint64_t seed = 0x0B07ULL;
};

/// Reparametrization lower bound: max over orthogonal O of
/// sum_i pi^2 / (lambda^2[(O^T L)_i] N^2), O = exp(skew), compass-search
/// polished from random starts.
double reparam_bound(const GeneratorSet& gens, double total_n,
                     const SearchOptions& opts = {});

/// Extended-separate bounds optimized over the estimated direction:
/// mm = (p^3 pi^2/N^2) / max_{|a|=1} lambda^2[a.L],
/// cr = (p^2/(k n^2)) / same. Sphere maximization with restarts.
std::pair<double, double> sep_plus_bound(const GeneratorSet& gens, double k,
                                         double n, double total_n,
                                         const SearchOptions& opts = {});

/// max_{|a|=1} lambda[a.L] (the sphere maximization itself).
double max_direction_span(const GeneratorSet& gens,
                          const SearchOptions& opts = {});

inline double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

} // namespace hbench::multi
