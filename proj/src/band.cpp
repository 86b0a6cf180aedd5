#include "qwalk/band.hpp"

#include <cmath>
#include <limits>

#include "qwalk/errors.hpp"

namespace qwalk {

Matrix2 symbol(double k, const Matrix2& c0) {
    Matrix2 m;
    const Complex up = std::exp(Complex(0.0, k));
    const Complex dn = std::exp(Complex(0.0, -k));
    m.row(0) = up * c0.row(0);
    m.row(1) = dn * c0.row(1);
    return m;
}

namespace {

double phase_in_2pi(Complex z) {
    double a = std::arg(z);
    if (a < 0.0) a += 2.0 * M_PI;
    return a;
}

}  // namespace

EigenPair2 eigendecompose_symbol(const Matrix2& m, double gap_threshold) {
    EigenPair2 out;
    const Complex b = m(0, 1);
    const Complex c = m(1, 0);
    if (std::abs(b) < 1e-14 && std::abs(c) < 1e-14) {
        out.diagonal = true;
        out.lambda = {m(0, 0), m(1, 1)};
        out.vectors = {Spinor(1.0, 0.0), Spinor(0.0, 1.0)};
        out.degenerate = std::abs(out.lambda[0] - out.lambda[1]) < gap_threshold;
        return out;
    }
    const Complex tr = m(0, 0) + m(1, 1);
    const Complex det = m(0, 0) * m(1, 1) - b * c;
    const Complex disc = std::sqrt(tr * tr - 4.0 * det);
    Complex l1 = 0.5 * (tr + disc);
    const Complex alt = 0.5 * (tr - disc);
    if (std::abs(alt) > std::abs(l1)) l1 = alt;
    const Complex l2 = std::abs(l1) > 0.0 ? det / l1 : alt;

    Spinor u1;
    const Spinor cand1(b, l1 - m(0, 0));
    const Spinor cand2(l1 - m(1, 1), c);
    u1 = cand1.norm() >= cand2.norm() ? cand1 : cand2;
    u1.normalize();
    // exact orthogonal complement; for a normal matrix this is the second
    // eigenvector
    const Spinor u2(-std::conj(u1(1)), std::conj(u1(0)));

    out.degenerate = std::abs(l1 - l2) < gap_threshold;
    // deterministic order by principal phase
    if (phase_in_2pi(l1) <= phase_in_2pi(l2)) {
        out.lambda = {l1, l2};
        out.vectors = {u1, u2};
    } else {
        out.lambda = {l2, l1};
        out.vectors = {u2, u1};
    }
    return out;
}

std::array<double, 2> group_velocity(const SymbolSample& sample) {
    if (sample.degenerate && !sample.diagonal) {
        throw FilterError("group velocity undefined at a band crossing");
    }
    std::array<double, 2> v{};
    for (int j = 0; j < 2; ++j) {
        const Spinor& u = sample.vectors[j];
        v[j] = std::norm(u(1)) - std::norm(u(0));  // -<u, sigma3 u>
    }
    return v;
}

BandDecomposition::BandDecomposition(const Matrix2& c0, int grid_size) : c0_(c0) {
    if (!is_unitary(c0)) {
        throw ConfigError("band decomposition needs a unitary coin");
    }
    if (grid_size < 8) {
        throw ConfigError("momentum grid too small");
    }
    samples_.resize(grid_size);
    min_gap_ = std::numeric_limits<double>::infinity();
    const double dk = 2.0 * M_PI / grid_size;
    for (int m = 0; m < grid_size; ++m) {
        SymbolSample& s = samples_[m];
        s.k = dk * m;
        EigenPair2 e = eigendecompose_symbol(symbol(s.k, c0));
        s.lambda = e.lambda;
        s.vectors = e.vectors;
        s.degenerate = e.degenerate;
        s.diagonal = e.diagonal;

        if (m > 0) {
            // keep band labels continuous: swap if the crossed overlaps with
            // the previous sample dominate
            const SymbolSample& p = samples_[m - 1];
            const double keep = std::abs(p.vectors[0].dot(s.vectors[0])) +
                                std::abs(p.vectors[1].dot(s.vectors[1]));
            const double swap = std::abs(p.vectors[0].dot(s.vectors[1])) +
                                std::abs(p.vectors[1].dot(s.vectors[0]));
            if (swap > keep) {
                std::swap(s.lambda[0], s.lambda[1]);
                std::swap(s.vectors[0], s.vectors[1]);
            }
            // gauge: make consecutive overlaps real positive
            for (int j = 0; j < 2; ++j) {
                const Complex ov = p.vectors[j].dot(s.vectors[j]);
                if (std::abs(ov) > 1e-14) {
                    s.vectors[j] *= std::conj(ov) / std::abs(ov);
                }
            }
        }

        const double gap = std::abs(s.lambda[0] - s.lambda[1]);
        min_gap_ = std::min(min_gap_, gap);
        if (s.degenerate) {
            degenerate_ = true;
            if (!s.diagonal) resolvable_ = false;
        }
        if (s.degenerate && !s.diagonal) {
            s.velocity = {std::numeric_limits<double>::quiet_NaN(),
                          std::numeric_limits<double>::quiet_NaN()};
        } else {
            s.velocity = group_velocity(s);
        }
    }
}

double BandDecomposition::delta_k() const { return 2.0 * M_PI / grid_size(); }

}  // namespace qwalk
