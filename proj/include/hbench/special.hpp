#pragma once

namespace hbench::special {

/// Airy function of the first kind on [-15, 10], absolute accuracy 1e-10.
///
/// Power series in the central window, Poincare asymptotic expansions with
/// optimal truncation outside. The series window extends to -7.5 on the
/// negative axis because the oscillatory asymptotic expansion only reaches
/// ~e^{-2 zeta} accuracy, which is not enough near -5.
double airy_ai(double x);

/// First derivative Ai'(x), same domain and technique.
double airy_ai_prime(double x);

/// First (largest) zero of Ai, about -2.338107, by bisection on [-3, -2].
double airy_first_zero();

} // namespace hbench::special
