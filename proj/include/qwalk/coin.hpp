#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>

#include <Eigen/Dense>

namespace qwalk {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using Spinor = Eigen::Vector2cd;

bool is_unitary(const Matrix2& m, double tol = 1e-12);

/// Operator norm (largest singular value) of a 2x2 complex matrix, closed form.
double operator_norm(const Matrix2& m);

/// Both singular values of a 2x2 complex matrix, descending, closed form.
std::array<double, 2> singular_values(const Matrix2& m);

/// A validated 2x2 unitary coin (a b; c d). The upper row feeds the
/// left-moving component, the lower row the right-moving one.
class CoinMatrix {
public:
    explicit CoinMatrix(const Matrix2& m);

    const Matrix2& matrix() const { return m_; }

    /// (a b; 0 0): the part of the coined amplitude shifted one site left.
    Matrix2 left_hop() const;
    /// (0 0; c d): the part shifted one site right.
    Matrix2 right_hop() const;

private:
    Matrix2 m_;
};

namespace coins {
Matrix2 hadamard();
Matrix2 identity();
Matrix2 flip();        // (0 1; 1 0)
Matrix2 updown();      // diag(1, -1)
Matrix2 rotation(double theta);
}  // namespace coins

enum class FieldKind { homogeneous, one_defect, finite_defects, power_decay };

const char* field_kind_name(FieldKind k);
FieldKind field_kind_from_name(const std::string& name);

/// Site-dependent coin assignment x -> C(x) with a homogeneous limit C0.
/// All constructors validate unitarity of every supplied matrix.
class CoinField {
public:
    static CoinField homogeneous(const Matrix2& c0);
    static CoinField one_defect(const Matrix2& c0, const Matrix2& defect);
    static CoinField finite_defects(const Matrix2& c0, std::map<int, Matrix2> defects);
    /// Default decaying family: C(x) = R(theta_x) C0 with
    /// theta_x = min(c1 |x|^(-1-eps), pi); satisfies ||C(x)-C0|| <= c1 |x|^(-1-eps).
    static CoinField power_decay(const Matrix2& c0, double c1, double eps);
    /// Same decay parameters with a caller-supplied site rule.
    static CoinField power_decay(const Matrix2& c0, double c1, double eps,
                                 std::function<Matrix2(int)> rule);

    Matrix2 coin(int x) const;
    const Matrix2& limit_coin() const { return c0_; }
    FieldKind kind() const { return kind_; }
    const std::map<int, Matrix2>& defects() const { return defects_; }

    bool has_decay_params() const { return c1_ > 0.0; }
    double c1() const { return c1_; }
    double eps() const { return eps_; }

    /// True when C(x) == C0 for every site (e.g. a one_defect field whose
    /// defect equals the limit coin).
    bool is_trivial() const;

    /// Stable identifier of the assignment, used to tie derived spectral
    /// data back to the field it came from.
    std::uint64_t hash() const { return hash_; }

private:
    CoinField(FieldKind kind, const Matrix2& c0);

    FieldKind kind_;
    Matrix2 c0_;
    std::map<int, Matrix2> defects_;
    double c1_ = 0.0;
    double eps_ = 0.0;
    std::function<Matrix2(int)> rule_;
    std::uint64_t hash_ = 0;

    void compute_hash();
};

}  // namespace qwalk
