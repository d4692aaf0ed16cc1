#include "hbench/optim.hpp"

#include <cmath>
#include <limits>

#include "hbench/rng.hpp"

namespace hbench::opt {

namespace {

DescentResult descend_once(const Objective& f, VectorXd x,
                           const DescentOptions& opts) {
    VectorXd grad(x.size());
    double value = f(x, &grad);
    double step = opts.init_step;
    double best = value;
    int stall = 0;
    for (int it = 0; it < opts.max_iters; ++it) {
        const double gnorm = grad.norm();
        if (gnorm < 1e-15) break;
        bool moved = false;
        for (int half = 0; half < 50; ++half) {
            VectorXd x_try = x - (step / gnorm) * grad;
            const double v_try = f(x_try, nullptr);
            if (v_try < value) {
                x = std::move(x_try);
                value = v_try;
                moved = true;
                step *= 1.4;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;
        value = f(x, &grad);
        if (value < best - opts.stall_tol) {
            best = value;
            stall = 0;
        } else if (++stall >= opts.stall_window) {
            break;
        }
    }
    return {std::move(x), value, true};
}

} // namespace

DescentResult minimize_subgradient(const Objective& f, const VectorXd& x0,
                                   const DescentOptions& opts) {
    CounterRng rng(opts.seed);
    DescentResult best;
    best.value = std::numeric_limits<double>::infinity();
    for (int r = 0; r < std::max(1, opts.restarts); ++r) {
        VectorXd x = x0;
        if (r > 0) {
            for (Eigen::Index i = 0; i < x.size(); ++i) {
                x[i] += opts.restart_spread * (rng.next_double() - 0.5);
            }
        }
        DescentResult res = descend_once(f, std::move(x), opts);
        if (res.value < best.value) best = std::move(res);
    }
    return best;
}

DescentResult maximize_on_sphere(const Objective& f, int dim,
                                 const DescentOptions& opts) {
    CounterRng rng(opts.seed);
    DescentResult best;
    best.value = -std::numeric_limits<double>::infinity();
    for (int r = 0; r < std::max(1, opts.restarts); ++r) {
        VectorXd x(dim);
        if (r < dim) {
            x.setZero();
            x[r] = 1.0; // axis-aligned starts first
        } else {
            for (int i = 0; i < dim; ++i) x[i] = rng.next_double() - 0.5;
        }
        x.normalize();
        VectorXd grad(dim);
        double value = f(x, &grad);
        double step = opts.init_step;
        for (int it = 0; it < opts.max_iters; ++it) {
            VectorXd tangent = grad - grad.dot(x) * x;
            const double tn = tangent.norm();
            if (tn < 1e-13) break;
            bool moved = false;
            for (int half = 0; half < 40; ++half) {
                VectorXd x_try = (x + (step / tn) * tangent).normalized();
                const double v_try = f(x_try, nullptr);
                if (v_try > value) {
                    x = std::move(x_try);
                    value = v_try;
                    moved = true;
                    step *= 1.3;
                    break;
                }
                step *= 0.5;
            }
            if (!moved) break;
            value = f(x, &grad);
        }
        if (value > best.value) {
            best.x = x;
            best.value = value;
        }
    }
    return best;
}

DescentResult maximize_compass(const std::function<double(const VectorXd&)>& f,
                               const VectorXd& x0, double init_step,
                               double tol, int max_iters) {
    VectorXd x = x0;
    double value = f(x);
    double step = init_step;
    for (int it = 0; it < max_iters && step > tol; ++it) {
        bool moved = false;
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            for (double sgn : {1.0, -1.0}) {
                VectorXd x_try = x;
                x_try[i] += sgn * step;
                const double v = f(x_try);
                if (v > value) {
                    x = std::move(x_try);
                    value = v;
                    moved = true;
                }
            }
        }
        if (!moved) step *= 0.5;
    }
    return {std::move(x), value, true};
}

} // namespace hbench::opt
