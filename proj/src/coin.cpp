#include "qwalk/coin.hpp"

#include <cmath>
#include <cstring>

#include "qwalk/errors.hpp"

namespace qwalk {

bool is_unitary(const Matrix2& m, double tol) {
    Matrix2 g = m.adjoint() * m - Matrix2::Identity();
    return g.cwiseAbs().maxCoeff() <= tol;
}

std::array<double, 2> singular_values(const Matrix2& m) {
    // Eigenvalues of m* m: (p +- sqrt(p^2 - 4 q)) / 2 with p = ||m||_F^2,
    // q = |det m|^2.
    const double p = m.squaredNorm();
    const double q = std::norm(m.determinant());
    double disc = p * p - 4.0 * q;
    if (disc < 0.0) disc = 0.0;
    const double root = std::sqrt(disc);
    const double hi = 0.5 * (p + root);
    const double lo = q > 0.0 && hi > 0.0 ? q / hi : 0.5 * (p - root);
    return {std::sqrt(std::max(hi, 0.0)), std::sqrt(std::max(lo, 0.0))};
}

double operator_norm(const Matrix2& m) { return singular_values(m)[0]; }

CoinMatrix::CoinMatrix(const Matrix2& m) : m_(m) {
    if (!is_unitary(m)) {
        throw ConfigError("coin matrix is not unitary");
    }
}

Matrix2 CoinMatrix::left_hop() const {
    Matrix2 p = Matrix2::Zero();
    p.row(0) = m_.row(0);
    return p;
}

Matrix2 CoinMatrix::right_hop() const {
    Matrix2 q = Matrix2::Zero();
    q.row(1) = m_.row(1);
    return q;
}

namespace coins {

Matrix2 hadamard() {
    Matrix2 m;
    const double s = 1.0 / std::sqrt(2.0);
    m << s, s, s, -s;
    return m;
}

Matrix2 identity() { return Matrix2::Identity(); }

Matrix2 flip() {
    Matrix2 m;
    m << 0, 1, 1, 0;
    return m;
}

Matrix2 updown() {
    Matrix2 m;
    m << 1, 0, 0, -1;
    return m;
}

Matrix2 rotation(double theta) {
    Matrix2 m;
    m << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    return m;
}

}  // namespace coins

const char* field_kind_name(FieldKind k) {
    switch (k) {
        case FieldKind::homogeneous: return "homogeneous";
        case FieldKind::one_defect: return "one_defect";
        case FieldKind::finite_defects: return "finite_defects";
        case FieldKind::power_decay: return "power_decay";
    }
    return "unknown";
}

FieldKind field_kind_from_name(const std::string& name) {
    if (name == "homogeneous") return FieldKind::homogeneous;
    if (name == "one_defect") return FieldKind::one_defect;
    if (name == "finite_defects") return FieldKind::finite_defects;
    if (name == "power_decay") return FieldKind::power_decay;
    throw ConfigError("unknown coin field kind: " + name);
}

CoinField::CoinField(FieldKind kind, const Matrix2& c0) : kind_(kind), c0_(c0) {
    if (!is_unitary(c0)) {
        throw ConfigError("limit coin is not unitary");
    }
}

CoinField CoinField::homogeneous(const Matrix2& c0) {
    CoinField f(FieldKind::homogeneous, c0);
    f.compute_hash();
    return f;
}

CoinField CoinField::one_defect(const Matrix2& c0, const Matrix2& defect) {
    CoinField f(FieldKind::one_defect, c0);
    if (!is_unitary(defect)) {
        throw ConfigError("defect coin is not unitary");
    }
    f.defects_[0] = defect;
    f.compute_hash();
    return f;
}

CoinField CoinField::finite_defects(const Matrix2& c0, std::map<int, Matrix2> defects) {
    CoinField f(FieldKind::finite_defects, c0);
    for (const auto& [x, m] : defects) {
        if (!is_unitary(m)) {
            throw ConfigError("defect coin at x=" + std::to_string(x) + " is not unitary");
        }
    }
    f.defects_ = std::move(defects);
    f.compute_hash();
    return f;
}

CoinField CoinField::power_decay(const Matrix2& c0, double c1, double eps) {
    return power_decay(c0, c1, eps, nullptr);
}

CoinField CoinField::power_decay(const Matrix2& c0, double c1, double eps,
                                 std::function<Matrix2(int)> rule) {
    if (!(c1 > 0.0) || !(eps > 0.0)) {
        throw ConfigError("power_decay needs positive c1 and eps");
    }
    CoinField f(FieldKind::power_decay, c0);
    f.c1_ = c1;
    f.eps_ = eps;
    f.rule_ = std::move(rule);
    f.compute_hash();
    return f;
}

Matrix2 CoinField::coin(int x) const {
    switch (kind_) {
        case FieldKind::homogeneous:
            return c0_;
        case FieldKind::one_defect:
        case FieldKind::finite_defects: {
            auto it = defects_.find(x);
            return it != defects_.end() ? it->second : c0_;
        }
        case FieldKind::power_decay: {
            if (rule_) {
                Matrix2 m = rule_(x);
                if (!is_unitary(m)) {
                    throw ConfigError("power_decay rule produced a non-unitary coin at x=" +
                                      std::to_string(x));
                }
                return m;
            }
            const double theta =
                x == 0 ? M_PI
                       : std::min(c1_ * std::pow(std::abs(static_cast<double>(x)), -1.0 - eps_),
                                  M_PI);
            return coins::rotation(theta) * c0_;
        }
    }
    return c0_;
}

bool CoinField::is_trivial() const {
    if (kind_ == FieldKind::homogeneous) return true;
    if (kind_ == FieldKind::power_decay) return false;
    for (const auto& [x, m] : defects_) {
        if ((m - c0_).cwiseAbs().maxCoeff() != 0.0) return false;
    }
    return true;
}

namespace {

void fnv_mix(std::uint64_t& h, const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
}

void fnv_mix_matrix(std::uint64_t& h, const Matrix2& m) {
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            const double re = m(r, c).real();
            const double im = m(r, c).imag();
            fnv_mix(h, &re, sizeof re);
            fnv_mix(h, &im, sizeof im);
        }
    }
}

}  // namespace

void CoinField::compute_hash() {
    std::uint64_t h = 14695981039346656037ull;
    const int kind = static_cast<int>(kind_);
    fnv_mix(h, &kind, sizeof kind);
    fnv_mix_matrix(h, c0_);
    for (const auto& [x, m] : defects_) {
        fnv_mix(h, &x, sizeof x);
        fnv_mix_matrix(h, m);
    }
    if (kind_ == FieldKind::power_decay) {
        fnv_mix(h, &c1_, sizeof c1_);
        fnv_mix(h, &eps_, sizeof eps_);
        // distinguish custom rules by their values near the origin
        for (int x = -32; x <= 32; ++x) {
            fnv_mix_matrix(h, coin(x));
        }
    }
    hash_ = h;
}

}  // namespace qwalk
