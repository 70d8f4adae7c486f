#pragma once

#include <functional>

namespace divkit {

/// Adaptive 21-point Gauss-Kronrod quadrature of f over the finite interval
/// [a, b], refined until the error estimate is below rel_tol times the L1
/// norm of the integrand. Returns 0 when a == b.
double integrate(const std::function<double(double)> &f, double a, double b,
                 double rel_tol = 1e-10);

}  // namespace divkit
