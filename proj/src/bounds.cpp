#include "hbench/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "hbench/quadrature.hpp"
#include "hbench/special.hpp"

namespace hbench::bounds {

namespace {

double correction(double x) { return 1.0 - 8.0 * std::log(x) / x; }

void require_positive(double v, const char* what) {
    if (!(v > 0.0)) {
        throw std::invalid_argument(std::string(what) + " must be positive");
    }
}

double airy_constant() {
    static const double c = [] {
        const double a0 = special::airy_first_zero();
        return 4.0 * std::pow(std::abs(a0), 3) / 27.0;
    }();
    return c;
}

} // namespace

std::string BoundReport::to_json() const {
    nlohmann::json j;
    j["name"] = name;
    j["value"] = value;
    j["informative"] = informative;
    j["inputs"] = inputs;
    j["notes"] = notes;
    return j.dump(2);
}

BoundReport pi_corrected_minimax(double n, double lambda, double delta) {
    require_positive(n, "N");
    require_positive(lambda, "lambda");
    require_positive(delta, "delta");
    const double x = n * lambda * delta;
    BoundReport r;
    r.name = "pi-corrected-minimax";
    r.value = M_PI * M_PI / (lambda * lambda * n * n) * correction(x);
    r.informative = x >= kInformativeX;
    r.inputs = {{"N", n}, {"lambda", lambda}, {"delta", delta}, {"x", x}};
    if (!r.informative) r.notes = "vacuous: N*lambda*delta below 26.1";
    return r;
}

BoundReport pi_corrected_bayes(double n, double lambda, double delta) {
    require_positive(n, "N");
    require_positive(lambda, "lambda");
    require_positive(delta, "delta");
    const double x = n * lambda * delta;
    BoundReport r;
    r.name = "pi-corrected-bayes";
    r.value = M_PI * M_PI / (lambda * lambda * n * n) *
              (1.0 - std::sqrt(std::max(0.0, 8.0 * std::log(x) / x)));
    r.informative = x >= kInformativeX;
    r.inputs = {{"N", n}, {"lambda", lambda}, {"delta", delta}, {"x", x}};
    if (!r.informative) r.notes = "vacuous: N*lambda*delta below 26.1";
    return r;
}

BoundReport mean_energy_minimax(double energy, double delta) {
    require_positive(energy, "E");
    require_positive(delta, "delta");
    const double x = energy * delta;
    BoundReport r;
    r.name = "mean-energy-minimax";
    r.value = airy_constant() / (energy * energy) * correction(x);
    r.informative = x >= kInformativeX;
    r.inputs = {{"E", energy}, {"delta", delta}, {"x", x}};
    if (!r.informative) r.notes = "vacuous: E*delta below 26.1";
    return r;
}

BoundReport frequency_bound(double n_probes, double total_time,
                            double lambda_g, double delta_omega) {
    require_positive(n_probes, "N_pr");
    require_positive(total_time, "T");
    require_positive(lambda_g, "lambda_G");
    require_positive(delta_omega, "delta_omega");
    const double x = n_probes * lambda_g * delta_omega;
    BoundReport r;
    r.name = "frequency";
    r.value = M_PI * M_PI /
              (n_probes * n_probes * lambda_g * lambda_g * total_time *
               total_time) *
              correction(x);
    r.informative = x >= kInformativeX;
    r.inputs = {{"N_pr", n_probes},
                {"T", total_time},
                {"lambda_G", lambda_g},
                {"delta_omega", delta_omega},
                {"x", x}};
    if (!r.informative) r.notes = "vacuous: N_pr*lambda_G*delta_omega below 26.1";
    return r;
}

BoundReport gradient_bound(double n_probes, double time, double gamma,
                           double length, double hbar) {
    require_positive(n_probes, "N_pr");
    require_positive(time, "t");
    require_positive(gamma, "gamma");
    require_positive(length, "L_x");
    require_positive(hbar, "hbar");
    const double denom = n_probes * time * hbar * gamma * length;
    BoundReport r;
    r.name = "gradient";
    r.value = 4.0 * M_PI * M_PI / (denom * denom);
    r.informative = true;
    r.inputs = {{"N_pr", n_probes},
                {"t", time},
                {"gamma", gamma},
                {"L_x", length},
                {"hbar", hbar}};
    r.notes = "asymptotic form; no prior-window correction term";
    return r;
}

double KaiserPrior::shape(double x, double alpha) {
    const double a = M_PI * alpha;
    const double t = x * x - 1.0;
    if (std::abs(t) < 1e-14) return 1.0;
    if (t < 0) {
        const double u = a * std::sqrt(-t);
        const double s = std::sinh(u) / u;
        return s * s * s * s;
    }
    const double u = a * std::sqrt(t);
    const double s = std::sin(u) / u;
    return s * s * s * s;
}

KaiserPrior::KaiserPrior(double alpha, double bandwidth)
    : alpha_(alpha), l_(bandwidth) {
    if (!(alpha > 0.5)) {
        throw std::invalid_argument("KaiserPrior: alpha > 1/2 required");
    }
    require_positive(bandwidth, "L");
    // integral of the shape in x = L theta / (4 alpha); the sinc^4 tail
    // needs a long window for the 1e-8-level normalization
    const double body = integrate_rel(
        [alpha](double x) { return shape(x, alpha); }, -1.0, 1.0, 1e-11, 1e-300,
        64);
    const double tail = integrate_rel(
        [alpha](double x) { return shape(x, alpha); }, 1.0, 400.0, 1e-9,
        1e-13 * body, 2048);
    n_alpha_ = 1.0 / (4.0 * alpha_ * (body + 2.0 * tail));
}

double KaiserPrior::normalization_bound() const {
    return 4.0 * std::sqrt(2.0) * std::pow(M_PI, 4) * std::pow(alpha_, 3.5) *
           std::exp(-4.0 * M_PI * alpha_);
}

double KaiserPrior::density(double theta) const {
    const double x = l_ * theta / (4.0 * alpha_);
    return n_alpha_ * l_ * shape(x, alpha_);
}

double r2_tail_bound(double alpha, double bandwidth) {
    if (!(alpha > 0.5)) {
        throw std::invalid_argument("r2_tail_bound: alpha > 1/2 required");
    }
    require_positive(bandwidth, "L");
    const double n_bound = 4.0 * std::sqrt(2.0) * std::pow(M_PI, 4) *
                           std::pow(alpha, 3.5) *
                           std::exp(-4.0 * M_PI * alpha);
    const double w = 4.0 * alpha / bandwidth;
    return 14.0 * n_bound * bandwidth * w * w * w;
}

double r2_tail_quadrature(const KaiserPrior& prior) {
    const double half = 4.0 * prior.alpha() / prior.bandwidth(); // delta/2
    const double far = 400.0 * half;
    return 2.0 * integrate_rel(
                     [&](double t) {
                         const double d = t - half;
                         return prior.density(t) * d * d;
                     },
                     half, far, 1e-7, 1e-300, 2048);
}

AppendixBResult verify_appendix_b(const std::vector<double>& y_grid,
                                  double n_alpha_scale) {
    AppendixBResult out;
    out.y = y_grid;
    out.margin.reserve(y_grid.size());
    bool first = true;
    for (double y : y_grid) {
        if (!(y >= 2.0)) {
            throw std::invalid_argument("verify_appendix_b: grid must be >= 2");
        }
        const double a = std::log(y);
        const double z = 4.0 * a / y;
        const double term1 = M_PI * M_PI * (2.0 * z) * (2.0 * z) *
                             (3.0 * z * z + 2.0 * z * z * z) /
                             ((1.0 + z) * (1.0 + z));
        const double n_bound = n_alpha_scale * 4.0 * std::sqrt(2.0) *
                               std::pow(M_PI, 4) * std::pow(a, 3.5) *
                               std::exp(-4.0 * M_PI * a);
        const double term2 = 14.0 * n_bound * std::pow(4.0 * a, 3);
        const double margin = term1 - term2;
        out.margin.push_back(margin);
        if (first || margin < out.min_margin) {
            out.min_margin = margin;
            out.argmin_y = y;
            first = false;
        }
        if (!(margin > 0.0)) out.all_positive = false;
    }
    return out;
}

std::vector<double> log_grid(double lo, double hi, int per_decade) {
    std::vector<double> g;
    const double l0 = std::log10(lo), l1 = std::log10(hi);
    const int count = static_cast<int>(std::ceil((l1 - l0) * per_decade)) + 1;
    for (int i = 0; i < count; ++i) {
        g.push_back(std::pow(10.0, l0 + (l1 - l0) * i / (count - 1)));
    }
    return g;
}

} // namespace hbench::bounds
