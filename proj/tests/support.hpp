#pragma once

// Shared test helpers: seeded random inputs and independent quadrature
// oracles the suites compare the library against.

#include <cmath>
#include <random>
#include <vector>

#include "qwalk/coin.hpp"

namespace testsupport {

using qwalk::Complex;
using qwalk::Matrix2;
using qwalk::Spinor;

inline double uniform01(std::mt19937_64& gen) {
    return (static_cast<double>(gen() >> 11) + 0.5) * 0x1p-53;
}

inline double normal01(std::mt19937_64& gen) {
    const double u1 = uniform01(gen);
    const double u2 = uniform01(gen);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

inline Complex random_complex(std::mt19937_64& gen) {
    return Complex(normal01(gen), normal01(gen));
}

// Haar-ish random U(2): normalized first row plus a random relative phase.
inline Matrix2 random_unitary(std::mt19937_64& gen) {
    Complex a = random_complex(gen);
    Complex b = random_complex(gen);
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    a /= n;
    b /= n;
    const Complex g = std::exp(Complex(0.0, 2.0 * M_PI * uniform01(gen)));
    Matrix2 m;
    m << a, b, -std::conj(b) * g, std::conj(a) * g;
    return m;
}

inline Spinor random_spinor(std::mt19937_64& gen) {
    Spinor s(random_complex(gen), random_complex(gen));
    s.normalize();
    return s;
}

// --- quadrature oracle for the limit density (1 - c v) f_K(v; r) ---
//
// In the variable v = r sin(phi) the integrand
//   g(phi) = (1 - c r sin(phi)) sqrt(1-r^2) / (pi (1 - r^2 sin^2(phi)))
// is smooth on [-pi/2, pi/2], so plain adaptive Simpson converges fast. The
// density expression is written out here independently of the library.

inline double oracle_integrand(double phi, double c, double r) {
    const double s = std::sin(phi);
    return (1.0 - c * r * s) * std::sqrt(1.0 - r * r) / (M_PI * (1.0 - r * r * s * s));
}

template <typename F>
double adaptive_simpson(F f, double a, double b, double tol, int depth = 24) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    struct Rec {
        double a, b, fa, fm, fb, whole, tol;
        int depth;
    };
    std::vector<Rec> stack{{a, b, fa, fm, fb, whole, tol, depth}};
    double total = 0.0;
    while (!stack.empty()) {
        Rec r = stack.back();
        stack.pop_back();
        const double mid = 0.5 * (r.a + r.b);
        const double lm = 0.5 * (r.a + mid), rm = 0.5 * (mid + r.b);
        const double flm = f(lm), frm = f(rm);
        const double left = (mid - r.a) / 6.0 * (r.fa + 4.0 * flm + r.fm);
        const double right = (r.b - mid) / 6.0 * (r.fm + 4.0 * frm + r.fb);
        if (r.depth <= 0 || std::abs(left + right - r.whole) < 15.0 * r.tol) {
            total += left + right + (left + right - r.whole) / 15.0;
        } else {
            stack.push_back({r.a, mid, r.fa, flm, r.fm, left, 0.5 * r.tol, r.depth - 1});
            stack.push_back({mid, r.b, r.fm, frm, r.fb, right, 0.5 * r.tol, r.depth - 1});
        }
    }
    return total;
}

/// Oracle CDF of (1 - c v) f_K(v; r) at v, by quadrature in phi.
inline double oracle_limit_cdf(double v, double c, double r, double tol = 1e-11) {
    if (v <= -r) return 0.0;
    if (v >= r) return 1.0;
    const double hi = std::asin(v / r);
    return adaptive_simpson([c, r](double p) { return oracle_integrand(p, c, r); }, -M_PI / 2.0,
                            hi, tol);
}

/// Oracle CDF at many sorted locations, integrated incrementally.
inline std::vector<double> oracle_limit_cdf_batch(const std::vector<double>& sorted_v, double c,
                                                  double r) {
    std::vector<double> out(sorted_v.size());
    double acc = 0.0;
    double prev_phi = -M_PI / 2.0;
    for (std::size_t i = 0; i < sorted_v.size(); ++i) {
        const double v = sorted_v[i];
        if (v <= -r) {
            out[i] = 0.0;
            continue;
        }
        if (v >= r) {
            acc += adaptive_simpson(
                [c, r](double p) { return oracle_integrand(p, c, r); }, prev_phi, M_PI / 2.0,
                1e-12);
            prev_phi = M_PI / 2.0;
            out[i] = acc;
            continue;
        }
        const double phi = std::asin(v / r);
        acc += adaptive_simpson([c, r](double p) { return oracle_integrand(p, c, r); }, prev_phi,
                                phi, 1e-12);
        prev_phi = phi;
        out[i] = acc;
    }
    return out;
}

}  // namespace testsupport
