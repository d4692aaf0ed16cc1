#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hbench/bounds.hpp"
#include "hbench/estimators.hpp"
#include "hbench/fisher.hpp"
#include "hbench/multi.hpp"
#include "hbench/noisy.hpp"
#include "hbench/phase.hpp"
#include "hbench/qm.hpp"
#include "hbench/special.hpp"

namespace py = pybind11;
using namespace hbench;

namespace {

py::dict report_to_dict(const bounds::BoundReport& r) {
    py::dict d;
    d["name"] = r.name;
    d["value"] = r.value;
    d["informative"] = r.informative;
    d["inputs"] = r.inputs;
    d["notes"] = r.notes;
    return d;
}

noisy::KrausChannel named_channel(const std::string& name, double param) {
    if (name == "dephasing") return noisy::dephasing_channel(param);
    if (name == "lossy") return noisy::lossy_interferometer_channel(param);
    if (name == "unitary-z") {
        return noisy::unitary_channel(
            qm::HermitianOperator(param * qm::pauli_z()));
    }
    throw std::invalid_argument("unknown channel: " + name);
}

multi::GeneratorSet named_generators(const std::string& name, int p) {
    if (name == "su2") return multi::su2_generators();
    if (name == "multiphase") return multi::multiphase_generators(p);
    if (name == "two-point") return multi::two_point_generators();
    throw std::invalid_argument("unknown generator set: " + name);
}

} // namespace

PYBIND11_MODULE(hbench_core, m) {
    m.doc() = "quantum metrology estimation bounds and Monte Carlo tools";

    // --- linear algebra / state primitives -------------------------------
    m.def("tensor",
          [](const qm::Mat& a, const qm::Mat& b) { return qm::tensor(a, b); },
          py::arg("a"), py::arg("b"), "Kronecker product");
    m.def("partial_trace", &qm::partial_trace, py::arg("m"), py::arg("dims"),
          py::arg("keep"));
    m.def(
        "eig_hermitian",
        [](const qm::Mat& h) {
            const auto r = qm::eig_hermitian(qm::HermitianOperator(h));
            return py::make_tuple(r.eigenvalues, r.eigenvectors);
        },
        py::arg("h"), "eigenvalues (ascending) and orthonormal eigenvectors");
    m.def(
        "spectral_span",
        [](const qm::Mat& h) {
            return qm::spectral_span(qm::HermitianOperator(h));
        },
        py::arg("h"));

    // --- fisher -----------------------------------------------------------
    m.def(
        "sld",
        [](const qm::Mat& rho, const qm::Mat& drho, double eps) {
            return fisher::sld(qm::DensityMatrix(rho),
                               qm::HermitianOperator(drho), eps)
                .matrix();
        },
        py::arg("rho"), py::arg("drho"), py::arg("eps_kernel") = 1e-10);
    m.def(
        "qfi",
        [](const qm::Mat& rho, const qm::Mat& drho) {
            const qm::DensityMatrix dm(rho);
            const qm::Mat l =
                fisher::sld(dm, qm::HermitianOperator(drho)).matrix();
            return (dm.matrix() * l * l).trace().real();
        },
        py::arg("rho"), py::arg("drho"),
        "quantum Fisher information Tr(rho L^2)");
    m.def("qfi_pure", &fisher::qfi_pure, py::arg("psi"), py::arg("dpsi"));
    m.def(
        "classical_fi",
        [](const Eigen::VectorXd& p, const Eigen::MatrixXd& dp) {
            double f = 0.0;
            if (dp.cols() != 1 || dp.rows() != p.size()) {
                throw std::invalid_argument("classical_fi: shape mismatch");
            }
            for (Eigen::Index x = 0; x < p.size(); ++x) {
                if (p[x] <= 0.0) {
                    if (std::abs(dp(x, 0)) > 1e-12) {
                        throw std::domain_error("singular model point");
                    }
                    continue;
                }
                f += dp(x, 0) * dp(x, 0) / p[x];
            }
            return f;
        },
        py::arg("p"), py::arg("dp"),
        "scalar classical Fisher information from tabulated p and dp");
    m.def("error_propagation", &fisher::error_propagation, py::arg("var_a"),
          py::arg("dmean_dtheta"));
    m.def("mandelstam_bound", &fisher::mandelstam_bound, py::arg("var_h"));
    m.def("van_trees_bound", &fisher::van_trees_bound, py::arg("avg_fi"),
          py::arg("prior_info"));

    // --- estimator lab ----------------------------------------------------
    m.def("ml_coin", &est::ml_coin, py::arg("s"), py::arg("k"));
    m.def(
        "mc_mse_coin_ml",
        [](double theta, long k, long n_samples, std::uint64_t seed) {
            const auto coin = est::coin_model();
            const auto ml = est::EstimatorSpec::custom_map(
                [](const std::vector<long>& c, long kk) {
                    return est::ml_coin(c[1], kk);
                });
            const auto r = est::mc_mse(coin, ml, theta, k, n_samples, seed);
            py::dict d;
            d["mean_estimate"] = r.mean_estimate;
            d["mse"] = r.mse;
            d["mse_stderr"] = r.mse_stderr;
            d["k"] = r.k;
            d["n_samples"] = r.n_samples;
            d["seed"] = r.seed;
            return d;
        },
        py::arg("theta"), py::arg("k"), py::arg("n_samples"), py::arg("seed"));
    m.def(
        "noon_mixture",
        [](int m_max) {
            const auto nm = est::noon_mixture_model(m_max);
            py::dict d;
            d["M"] = nm.m_max;
            d["fi_closed"] = nm.fi_closed;
            d["mean_energy"] = nm.mean_energy;
            return d;
        },
        py::arg("m_max"));
    m.def(
        "convergence_study",
        [](const std::vector<int>& ms, const std::vector<long>& ks,
           std::uint64_t seed, double theta, long n_samples, int reps) {
            est::ConvergenceOptions o;
            o.theta = theta;
            o.n_samples = n_samples;
            o.repetitions = reps;
            const auto rows = est::convergence_study(ms, ks, seed, o);
            py::list out;
            for (const auto& r : rows) {
                py::dict d;
                d["M"] = r.m_max;
                d["k"] = r.k;
                d["mse"] = r.mse;
                d["stderr"] = r.mse_stderr;
                d["cr"] = r.cr;
                out.append(d);
            }
            return out;
        },
        py::arg("m_list"), py::arg("k_grid"), py::arg("seed"),
        py::arg("theta") = 1.78072, py::arg("n_samples") = 100,
        py::arg("repetitions") = 100);

    // --- covariant phase --------------------------------------------------
    m.def(
        "optimal_sin_state",
        [](int n) {
            const auto [state, cost] = phase::optimal_sin_state(n);
            return py::make_tuple(state.coeffs(), cost);
        },
        py::arg("n"));
    m.def(
        "phase_bayes_cost",
        [](const Eigen::VectorXd& c) {
            return phase::phase_bayes_cost(phase::PhaseState(c));
        },
        py::arg("coeffs"));
    m.def(
        "dft_povm_cost",
        [](const Eigen::VectorXd& c) {
            return phase::dft_povm_cost(phase::PhaseState(c));
        },
        py::arg("coeffs"));
    m.def("tail_distribution", &phase::tail_distribution, py::arg("n"),
          py::arg("delta"));
    m.def("airy_ai", &special::airy_ai, py::arg("x"));
    m.def("airy_ai_prime", &special::airy_ai_prime, py::arg("x"));
    m.def("airy_first_zero", &special::airy_first_zero);
    m.def("airy_profile", &phase::airy_profile, py::arg("mu"));
    m.def(
        "mean_energy_cost",
        [](double energy) { return phase::mean_energy_solution(energy).second; },
        py::arg("energy"));

    // --- headline bounds ----------------------------------------------------
    m.def(
        "pi_corrected_minimax",
        [](double n, double lam, double delta) {
            return report_to_dict(bounds::pi_corrected_minimax(n, lam, delta));
        },
        py::arg("n"), py::arg("lam"), py::arg("delta"));
    m.def(
        "pi_corrected_bayes",
        [](double n, double lam, double delta) {
            return report_to_dict(bounds::pi_corrected_bayes(n, lam, delta));
        },
        py::arg("n"), py::arg("lam"), py::arg("delta"));
    m.def(
        "mean_energy_minimax",
        [](double e, double delta) {
            return report_to_dict(bounds::mean_energy_minimax(e, delta));
        },
        py::arg("energy"), py::arg("delta"));
    m.def(
        "frequency_bound",
        [](double npr, double t, double lg, double dw) {
            return report_to_dict(bounds::frequency_bound(npr, t, lg, dw));
        },
        py::arg("n_probes"), py::arg("total_time"), py::arg("lambda_g"),
        py::arg("delta_omega"));
    m.def(
        "gradient_bound",
        [](double npr, double t, double gamma, double len, double hbar) {
            return report_to_dict(
                bounds::gradient_bound(npr, t, gamma, len, hbar));
        },
        py::arg("n_probes"), py::arg("time"), py::arg("gamma"),
        py::arg("length"), py::arg("hbar") = 1.0);
    m.def(
        "kaiser_density",
        [](double alpha, double bandwidth, double theta) {
            return bounds::KaiserPrior(alpha, bandwidth).density(theta);
        },
        py::arg("alpha"), py::arg("bandwidth"), py::arg("theta"));
    m.def(
        "verify_appendix_b",
        [](double lo, double hi, double scale) {
            const auto res =
                bounds::verify_appendix_b(bounds::log_grid(lo, hi), scale);
            return py::make_tuple(res.all_positive, res.min_margin);
        },
        py::arg("lo") = 2.0, py::arg("hi") = 1e6,
        py::arg("n_alpha_scale") = 1.0);

    // --- noisy channels -----------------------------------------------------
    m.def(
        "channel_bounds",
        [](const std::string& name, double param, double theta0, long n) {
            const auto ch = named_channel(name, param);
            py::dict d;
            d["parallel"] = noisy::minimize_parallel_bound(ch, theta0, n);
            d["adaptive_iterative"] =
                noisy::adaptive_bound_iterative(ch, theta0, n);
            const auto closed = noisy::adaptive_bound_closed(ch, theta0, n);
            d["adaptive_closed_1"] = closed.first;
            d["adaptive_closed_2"] = closed.second;
            d["min_beta_norm"] = noisy::minimize_beta_norm(ch, theta0);
            const auto hnks = noisy::hnks_test(ch, theta0);
            d["hnks_violates_span"] = hnks.violates_span;
            d["hnks_residual"] = hnks.residual;
            if (!hnks.violates_span) {
                d["asymptotic_linear_coeff"] =
                    noisy::asymptotic_linear_coeff(ch, theta0);
            }
            return d;
        },
        py::arg("channel"), py::arg("param"), py::arg("theta0") = 0.0,
        py::arg("n") = 1);
    m.def(
        "qec_dephasing_demo",
        [](double p, double theta0, double theta) {
            const auto r = noisy::qec_dephasing_demo(p, theta0, theta);
            return py::make_tuple(r.logical, r.off_diag_factor);
        },
        py::arg("p"), py::arg("theta0"), py::arg("theta"));
    m.def("squeezed_mse", &noisy::squeezed_mse, py::arg("nbar"), py::arg("r"),
          py::arg("phi"), py::arg("eta"), py::arg("theta"));
    m.def("quantum_advantage_db", &noisy::quantum_advantage_db, py::arg("r"),
          py::arg("eta"));
    m.def("squeeze_param_from_factor", &noisy::squeeze_param_from_factor,
          py::arg("e2r"));

    // --- multiparameter -----------------------------------------------------
    m.def(
        "multi_costs",
        [](const std::string& model, int p, double k, double n,
           double total_n, double theta_norm) {
            std::vector<multi::CostScenario> rows;
            if (model == "multiphase") {
                rows = multi::multiphase_costs(p, k, n, total_n);
            } else if (model == "su2") {
                rows = multi::su2_costs(n, k, theta_norm, total_n);
            } else if (model == "two-point") {
                rows = multi::two_point_field_costs(k, n, total_n);
            } else {
                throw std::invalid_argument("unknown model: " + model);
            }
            py::list out;
            for (const auto& r : rows) {
                py::dict d;
                d["model"] = r.model;
                d["strategy"] = r.strategy;
                d["p"] = r.p;
                d["k"] = r.k;
                d["n"] = r.n;
                d["N"] = r.total_n;
                d["value"] = r.value;
                out.append(d);
            }
            return out;
        },
        py::arg("model"), py::arg("p") = 2, py::arg("k") = 1,
        py::arg("n") = 1, py::arg("total_n") = 100,
        py::arg("theta_norm") = 0.0);
    m.def("simplex_ansatz_energy", &multi::simplex_ansatz_energy,
          py::arg("p"), py::arg("a_exp"), py::arg("b_exp"));
    m.def("simplex_ansatz_closed_form", &multi::simplex_ansatz_closed_form,
          py::arg("p"));
    m.def(
        "reparam_bound",
        [](const std::string& gens, int p, double total_n) {
            return multi::reparam_bound(named_generators(gens, p), total_n);
        },
        py::arg("generators"), py::arg("p") = 2, py::arg("total_n") = 1.0);
    m.def(
        "adaptive_qfi_bell",
        [](double theta_norm, int n, bool inverse_controls) {
            const auto gens = multi::su2_generators();
            fisher::RVec th(3);
            th << 0.0, 0.0, 2.0 * theta_norm;
            qm::Vec bell(4);
            bell << 1.0 / std::sqrt(2.0), 0, 0, 1.0 / std::sqrt(2.0);
            return multi::adaptive_qfi(gens, th, n,
                                       inverse_controls
                                           ? multi::Controls::InverseEvolution
                                           : multi::Controls::Identity,
                                       bell)
                .matrix();
        },
        py::arg("theta_norm"), py::arg("n") = 1,
        py::arg("inverse_controls") = true);
}
