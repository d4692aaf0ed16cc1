#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>

namespace hbench::opt {

using Eigen::VectorXd;

/// Objective callback: value at x; when grad is non-null, fill a
/// (sub)gradient of the same dimension.
using Objective = std::function<double(const VectorXd& x, VectorXd* grad)>;

struct DescentOptions {
    int max_iters = 2000;
    double init_step = 0.25;
    int stall_window = 100;
    double stall_tol = 1e-9;
    int restarts = 8;
    double restart_spread = 1.0;
    std::uint64_t seed = 0x5eedULL;
};

struct DescentResult {
    VectorXd x;
    double value = 0.0;
    bool converged = true;
};

/// Normalized-subgradient descent with backtracking and multiple random
/// restarts around x0. Suited to the small convex (or mildly non-convex,
/// multi-started) minimizations in this project.
DescentResult minimize_subgradient(const Objective& f, const VectorXd& x0,
                                   const DescentOptions& opts = {});

/// Projected gradient ascent of a smooth function on the unit sphere;
/// multi-start, returns the best (x, value).
DescentResult maximize_on_sphere(const Objective& f, int dim,
                                 const DescentOptions& opts = {});

/// Derivative-free compass (pattern) search maximization, used to polish
/// non-smooth objectives such as spectral spans under rotations.
DescentResult maximize_compass(const std::function<double(const VectorXd&)>& f,
                               const VectorXd& x0, double init_step = 0.5,
                               double tol = 1e-10, int max_iters = 4000);

} // namespace hbench::opt
