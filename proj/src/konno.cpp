#include "qwalk/konno.hpp"

#include <cmath>

#include "qwalk/errors.hpp"

namespace qwalk {

double konno_density(double v, double r) {
    if (!(r > 0.0) || !(r < 1.0)) {
        throw ConfigError("konno density needs r in (0, 1)");
    }
    if (std::abs(v) >= r) return 0.0;
    return std::sqrt(1.0 - r * r) / (M_PI * (1.0 - v * v) * std::sqrt(r * r - v * v));
}

double spinor_weight(Complex alpha, Complex beta) {
    return std::norm(alpha) - std::norm(beta) + 2.0 * (alpha * std::conj(beta)).real();
}

double hadamard_limit_density(double v, Complex alpha, Complex beta) {
    if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-10) {
        throw ConfigError("spinor (alpha, beta) must be normalized");
    }
    const double c = spinor_weight(alpha, beta);
    return (1.0 - c * v) * konno_density(v, 1.0 / std::sqrt(2.0));
}

}  // namespace qwalk
