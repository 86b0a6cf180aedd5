#pragma once

#include <array>
#include <vector>

#include "qwalk/coin.hpp"

namespace qwalk {

/// Momentum-space one-step matrix diag(e^{ik}, e^{-ik}) C0.
Matrix2 symbol(double k, const Matrix2& c0);

struct EigenPair2 {
    std::array<Complex, 2> lambda;
    std::array<Spinor, 2> vectors;
    bool degenerate = false;  // |lambda1 - lambda2| below threshold
    bool diagonal = false;    // input was exactly diagonal; vectors exact even at a crossing
};

/// Closed-form eigensolve of a 2x2 unitary. The second vector is the exact
/// orthogonal complement of the first, so orthonormality holds to rounding.
EigenPair2 eigendecompose_symbol(const Matrix2& m, double gap_threshold = 1e-8);

struct SymbolSample {
    double k = 0.0;
    std::array<Complex, 2> lambda;
    std::array<Spinor, 2> vectors;
    std::array<double, 2> velocity{};
    bool degenerate = false;
    bool diagonal = false;
};

/// Transport speeds of the two bands at one momentum, computed from the
/// eigenvectors as v_j = -<u_j, sigma3 u_j>. Throws FilterError at an
/// unresolvable crossing.
std::array<double, 2> group_velocity(const SymbolSample& sample);

/// Eigenvalue/eigenvector sections of the symbol over a uniform momentum
/// grid, with band labels tracked by maximal overlap and phases fixed so
/// consecutive sections overlap real-positively.
class BandDecomposition {
public:
    BandDecomposition(const Matrix2& c0, int grid_size);

    const Matrix2& coin() const { return c0_; }
    int grid_size() const { return static_cast<int>(samples_.size()); }
    const std::vector<SymbolSample>& samples() const { return samples_; }
    double delta_k() const;

    double min_gap() const { return min_gap_; }
    /// Some grid point has |lambda1 - lambda2| below the crossing threshold.
    bool degenerate() const { return degenerate_; }
    /// Every flagged crossing sits at an exactly diagonal symbol, where the
    /// constant sections e1, e2 continue smoothly through it.
    bool resolvable() const { return resolvable_; }

private:
    Matrix2 c0_;
    std::vector<SymbolSample> samples_;
    double min_gap_ = 0.0;
    bool degenerate_ = false;
    bool resolvable_ = true;
};

}  // namespace qwalk
