#pragma once

#include "qwalk/coin.hpp"

namespace qwalk {

/// Konno function sqrt(1-r^2) / (pi (1-v^2) sqrt(r^2-v^2)) on (-r, r),
/// zero outside. Requires r in (0,1).
double konno_density(double v, double r);

/// c = |alpha|^2 - |beta|^2 + alpha conj(beta) + conj(alpha) beta.
double spinor_weight(Complex alpha, Complex beta);

/// Limit density (1 - c v) f_K(v; 1/sqrt(2)) of the Hadamard walk started
/// from the origin with spinor (alpha, beta). Requires |alpha|^2+|beta|^2 = 1.
double hadamard_limit_density(double v, Complex alpha, Complex beta);

}  // namespace qwalk
