// hbench - command line front end emitting the library's tables and bound
// reports as CSV/JSON with deterministic seeds.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hbench/bounds.hpp"
#include "hbench/estimators.hpp"
#include "hbench/multi.hpp"
#include "hbench/noisy.hpp"
#include "hbench/phase.hpp"
#include "hbench/rng.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

struct OutputSink {
    std::string path;    // empty = stdout
    std::string command;
    std::uint64_t seed = 0;

    // atomic write: temp file next to the target, then rename
    void write(const std::string& payload) const {
        if (path.empty()) {
            std::cout << payload;
            return;
        }
        namespace fs = std::filesystem;
        const fs::path target(path);
        const fs::path tmp = target.string() + ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) {
                throw std::runtime_error("cannot open output file: " + path);
            }
            out << payload;
            if (!out.good()) {
                throw std::runtime_error("failed writing output: " + path);
            }
        }
        fs::rename(tmp, target);
        nlohmann::json meta;
        meta["command"] = command;
        meta["version"] = kVersion;
        meta["seed"] = seed;
        std::ofstream ms(target.string() + ".meta.json",
                         std::ios::binary | std::ios::trunc);
        ms << meta.dump(2) << "\n";
    }
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::vector<long> parse_longs(const std::string& csv) {
    std::vector<long> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stol(item));
    }
    return out;
}

std::vector<double> parse_doubles(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

int run_fig_mse(const std::string& k_list, const std::string& theta_grid,
                long n_samples, const std::string& lu_list, long lu_k,
                const OutputSink& sink) {
    const std::vector<long> ks = parse_longs(k_list);
    const std::vector<double> thetas = parse_doubles(theta_grid);
    const std::vector<double> lu_points = parse_doubles(lu_list);
    if (ks.empty() || thetas.empty()) {
        std::cerr << "fig-mse: empty k-list or theta-grid\n";
        return 2;
    }
    const auto coin = hbench::est::coin_model();
    const auto ml = hbench::est::EstimatorSpec::custom_map(
        [](const std::vector<long>& c, long k) {
            return hbench::est::ml_coin(c[1], k);
        });
    std::ostringstream csv;
    csv << "estimator,theta,k,mean,mse\n";
    std::uint64_t stream = 0;
    for (long k : ks) {
        for (double th : thetas) {
            const auto r = hbench::est::mc_mse(
                coin, ml, th, k, n_samples,
                hbench::derive_seed(sink.seed, 1, stream++));
            csv << "ML," << fmt(th) << "," << k << ","
                << fmt(r.mean_estimate) << "," << fmt(r.mse) << "\n";
        }
    }
    for (double theta0 : lu_points) {
        const auto lu = hbench::est::locally_unbiased_estimator(coin, theta0);
        for (double th : thetas) {
            const auto r = hbench::est::mc_mse(
                coin, lu, th, lu_k, n_samples,
                hbench::derive_seed(sink.seed, 2, stream++));
            csv << "LU@" << fmt(theta0) << "," << fmt(th) << "," << lu_k
                << "," << fmt(r.mean_estimate) << "," << fmt(r.mse) << "\n";
        }
    }
    sink.write(csv.str());
    return 0;
}

int run_fig_conv(const std::string& m_list, const std::string& k_grid,
                 double theta, long n_samples, int repetitions,
                 const OutputSink& sink) {
    std::vector<long> ms_l = parse_longs(m_list);
    std::vector<long> ks = parse_longs(k_grid);
    if (ms_l.empty() || ks.empty()) {
        std::cerr << "fig-conv: empty M-list or k-grid\n";
        return 2;
    }
    std::sort(ms_l.begin(), ms_l.end());
    std::sort(ks.begin(), ks.end());
    std::vector<int> ms(ms_l.begin(), ms_l.end());
    hbench::est::ConvergenceOptions opts;
    opts.theta = theta;
    opts.n_samples = n_samples;
    opts.repetitions = repetitions;
    const auto rows = hbench::est::convergence_study(ms, ks, sink.seed, opts);
    std::ostringstream csv;
    csv << "M,k,mse,stderr,cr\n";
    for (const auto& r : rows) {
        csv << r.m_max << "," << r.k << "," << fmt(r.mse) << ","
            << fmt(r.mse_stderr) << "," << fmt(r.cr) << "\n";
    }
    sink.write(csv.str());
    return 0;
}

int run_bounds(const std::string& kind,
               const std::map<std::string, double>& params,
               const OutputSink& sink) {
    auto need = [&](const char* name) {
        const auto it = params.find(name);
        if (it == params.end()) {
            throw CLI::ValidationError(
                "bounds", std::string("missing parameter --") + name +
                              " for kind " + kind);
        }
        return it->second;
    };
    hbench::bounds::BoundReport rep;
    if (kind == "pi-minimax") {
        rep = hbench::bounds::pi_corrected_minimax(need("N"), need("lambda"),
                                                   need("delta"));
    } else if (kind == "pi-bayes") {
        rep = hbench::bounds::pi_corrected_bayes(need("N"), need("lambda"),
                                                 need("delta"));
    } else if (kind == "mean-energy") {
        rep = hbench::bounds::mean_energy_minimax(need("E"), need("delta"));
    } else if (kind == "frequency") {
        rep = hbench::bounds::frequency_bound(need("N-pr"), need("T"),
                                              need("lambda-G"),
                                              need("delta-omega"));
    } else if (kind == "gradient") {
        const auto it = params.find("hbar");
        rep = hbench::bounds::gradient_bound(
            need("N-pr"), need("t"), need("gamma"), need("L-x"),
            it == params.end() ? 1.0 : it->second);
    } else {
        throw CLI::ValidationError("bounds", "unknown kind: " + kind);
    }
    sink.write(rep.to_json() + "\n");
    return 0;
}

int run_phase(int n_max, const OutputSink& sink) {
    if (n_max < 1) {
        std::cerr << "phase: --n-max must be >= 1\n";
        return 2;
    }
    std::ostringstream csv;
    csv << "N,cost,N2cost\n";
    for (int n = 1; n <= n_max; ++n) {
        const auto [state, cost] = hbench::phase::optimal_sin_state(n);
        csv << n << "," << fmt(cost) << ","
            << fmt(cost * static_cast<double>(n) * n) << "\n";
    }
    sink.write(csv.str());
    return 0;
}

int run_noisy(const std::string& channel, double p, double eta, double theta0,
              const std::string& channel_file, long n,
              const OutputSink& sink) {
    hbench::noisy::KrausChannel ch;
    double th0 = theta0;
    if (!channel_file.empty()) {
        std::ifstream in(channel_file);
        if (!in) {
            std::cerr << "noisy: cannot read channel file " << channel_file
                      << "\n";
            return 2;
        }
        std::stringstream buf;
        buf << in.rdbuf();
        ch = hbench::noisy::channel_from_json(buf.str(), &th0);
    } else if (channel == "dephasing") {
        ch = hbench::noisy::dephasing_channel(p);
    } else if (channel == "lossy") {
        ch = hbench::noisy::lossy_interferometer_channel(eta);
    } else {
        std::cerr << "noisy: unknown channel '" << channel
                  << "' (use dephasing, lossy or --channel-file)\n";
        return 2;
    }
    std::ostringstream csv;
    csv << "bound,n,value\n";
    const double par = hbench::noisy::minimize_parallel_bound(ch, th0, n);
    const double iter = hbench::noisy::adaptive_bound_iterative(ch, th0, n);
    const auto closed = hbench::noisy::adaptive_bound_closed(ch, th0, n);
    const double bmin = hbench::noisy::minimize_beta_norm(ch, th0);
    csv << "parallel," << n << "," << fmt(par) << "\n";
    csv << "adaptive-iterative," << n << "," << fmt(iter) << "\n";
    csv << "adaptive-closed-1," << n << "," << fmt(closed.first) << "\n";
    csv << "adaptive-closed-2," << n << "," << fmt(closed.second) << "\n";
    csv << "min-beta-norm," << n << "," << fmt(bmin) << "\n";
    const auto hnks = hbench::noisy::hnks_test(ch, th0);
    if (!hnks.violates_span) {
        csv << "asymptotic-linear-coeff," << n << ","
            << fmt(hbench::noisy::asymptotic_linear_coeff(ch, th0)) << "\n";
    }
    sink.write(csv.str());
    return 0;
}

int run_multi(const std::string& model, int p, double k, double n,
              double total_n, double theta_norm, const OutputSink& sink) {
    std::vector<hbench::multi::CostScenario> rows;
    if (model == "multiphase") {
        rows = hbench::multi::multiphase_costs(p, k, n, total_n);
    } else if (model == "su2") {
        rows = hbench::multi::su2_costs(n, k, theta_norm, total_n);
    } else if (model == "two-point") {
        rows = hbench::multi::two_point_field_costs(k, n, total_n);
    } else {
        std::cerr << "multi: unknown model '" << model << "'\n";
        return 2;
    }
    std::ostringstream csv;
    csv << "model,strategy,p,k,n,N,value\n";
    for (const auto& r : rows) {
        csv << r.model << "," << r.strategy << "," << r.p << "," << fmt(r.k)
            << "," << fmt(r.n) << "," << fmt(r.total_n) << ","
            << fmt(r.value) << "\n";
    }
    sink.write(csv.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum metrology bound and estimator benchmarks"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::uint64_t seed = 20250810ULL;
    std::string out_path;
    std::string format = "csv";
    app.add_option("--seed", seed, "global RNG seed");
    app.add_option("--out", out_path, "output path (default stdout)");
    app.add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    auto* mse = app.add_subcommand(
        "fig-mse", "coin-model ML / locally-unbiased MSE table");
    std::string k_list = "2,10,100";
    std::string theta_grid =
        "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1,1.1,1.2,1.3,1.4,1.5";
    long mse_samples = 2000;
    std::string lu_list = "0,1";
    long lu_k = 100;
    mse->add_option("--k-list", k_list, "comma separated repetition counts");
    mse->add_option("--theta-grid", theta_grid,
                    "comma separated theta values");
    mse->add_option("--n-samples", mse_samples,
                    "Monte Carlo trials per point");
    mse->add_option("--lu-theta0", lu_list,
                    "anchor points of the locally unbiased estimator");
    mse->add_option("--lu-k", lu_k, "repetitions for the LU estimator");

    auto* conv = app.add_subcommand(
        "fig-conv", "ML convergence to the CR bound for n00n mixtures");
    std::string m_list = "1,2,8,128";
    std::string k_grid = "1,2,4,8,16,32,64,128,256,512,1024,2048,4096";
    double conv_theta = 1.78072;
    long conv_samples = 50;
    int conv_reps = 40;
    conv->add_option("--m-list", m_list, "mixture cutoffs M");
    conv->add_option("--k-grid", k_grid, "repetition counts");
    conv->add_option("--theta", conv_theta, "true parameter value");
    conv->add_option("--n-samples", conv_samples, "trials per MSE estimate");
    conv->add_option("--repetitions", conv_reps,
                     "MSE estimates averaged per point");

    auto* bnd = app.add_subcommand("bounds", "single bound report as JSON");
    std::string kind;
    bnd->add_option("--kind", kind,
                    "pi-minimax | pi-bayes | mean-energy | frequency | "
                    "gradient")
        ->required();
    std::map<std::string, double> bparams;
    for (const char* name :
         {"N", "lambda", "delta", "E", "N-pr", "T", "lambda-G",
          "delta-omega", "t", "gamma", "L-x", "hbar"}) {
        bnd->add_option_function<double>(
            std::string("--") + name,
            [&bparams, name](double v) { bparams[name] = v; });
    }

    auto* ph = app.add_subcommand("phase",
                                  "optimal covariant phase cost vs N");
    int n_max = 100;
    ph->add_option("--n-max", n_max, "largest photon number");

    auto* noisy_cmd =
        app.add_subcommand("noisy", "channel bounds for n gate uses");
    std::string channel = "dephasing";
    double ch_p = 0.25, ch_eta = 0.5, ch_theta0 = 0.0;
    std::string channel_file;
    long noisy_n = 10;
    noisy_cmd->add_option("--channel", channel, "dephasing | lossy");
    noisy_cmd->add_option("--p", ch_p, "dephasing weight");
    noisy_cmd->add_option("--eta", ch_eta, "transmission");
    noisy_cmd->add_option("--theta0", ch_theta0, "evaluation point");
    noisy_cmd->add_option("--channel-file", channel_file,
                          "JSON channel description");
    noisy_cmd->add_option("--n", noisy_n, "number of gate uses");

    auto* mp = app.add_subcommand("multi", "multiparameter cost scenarios");
    std::string mmodel = "multiphase";
    int mp_p = 2;
    double mp_k = 1, mp_n = 1, mp_total = 100, mp_theta = 0.0;
    mp->add_option("--model", mmodel, "multiphase | su2 | two-point");
    mp->add_option("--p", mp_p, "parameter count (multiphase)");
    mp->add_option("--k", mp_k, "repetitions");
    mp->add_option("--n", mp_n, "gates per trial");
    mp->add_option("--N", mp_total, "total resources");
    mp->add_option("--theta-norm", mp_theta, "su2 half-angle");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" ||
            e.get_name() == "CallForAllHelp" ||
            e.get_name() == "CallForVersion") {
            return app.exit(e);
        }
        std::cerr << e.what() << "\n";
        return 2;
    }

    OutputSink sink{out_path, "", seed};
    try {
        if (mse->parsed()) {
            sink.command = "fig-mse";
            return run_fig_mse(k_list, theta_grid, mse_samples, lu_list,
                               lu_k, sink);
        }
        if (conv->parsed()) {
            sink.command = "fig-conv";
            return run_fig_conv(m_list, k_grid, conv_theta, conv_samples,
                                conv_reps, sink);
        }
        if (bnd->parsed()) {
            sink.command = "bounds";
            try {
                return run_bounds(kind, bparams, sink);
            } catch (const CLI::ValidationError& e) {
                std::cerr << e.what() << "\n";
                return 2;
            }
        }
        if (ph->parsed()) {
            sink.command = "phase";
            return run_phase(n_max, sink);
        }
        if (noisy_cmd->parsed()) {
            sink.command = "noisy";
            return run_noisy(channel, ch_p, ch_eta, ch_theta0, channel_file,
                             noisy_n, sink);
        }
        if (mp->parsed()) {
            sink.command = "multi";
            return run_multi(mmodel, mp_p, mp_k, mp_n, mp_total, mp_theta,
                             sink);
        }
    } catch (const std::exception& e) {
        std::cerr << "hbench: " << e.what() << "\n";
        return 3;
    }
    std::cerr << "no command given\n";
    return 2;
}
