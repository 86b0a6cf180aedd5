#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qwalk/coin.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

enum class Boundary { reflecting, periodic };

const char* boundary_name(Boundary b);
Boundary boundary_from_name(const std::string& name);

/// Dense one-step matrix on sites [-L, L], ordered as index(x, s) = 2(x+L)+s.
/// Interior rows reproduce the infinite-lattice update rule exactly; the
/// boundary rule recycles the outgoing amplitude so the matrix stays unitary.
struct TruncatedEvolution {
    int half_width = 0;
    Boundary boundary = Boundary::reflecting;
    Eigen::MatrixXcd matrix;
    std::uint64_t field_hash = 0;

    int dimension() const { return static_cast<int>(matrix.rows()); }
    int index(int x, int s) const { return 2 * (x + half_width) + s; }
};

TruncatedEvolution build_truncated(const CoinField& field, int half_width, Boundary boundary);

/// Eigendecomposition of a unitary matrix through its commuting Hermitian
/// halves (U+U*)/2 and (U-U*)/2i. Vectors are orthonormal to rounding;
/// eigenvalues are returned unimodular.
struct UnitaryEigensystem {
    Eigen::VectorXcd eigenvalues;
    Eigen::MatrixXcd vectors;  // columns
};
UnitaryEigensystem unitary_eigensystem(const Eigen::MatrixXcd& u);

struct BoundState {
    double theta = 0.0;  // eigenphase in [0, 2pi)
    Eigen::VectorXcd vector;
    double edge_mass = 0.0;
    double decay_rate = 0.0;  // fitted kappa in ||eta(x)|| ~ A exp(-kappa |x|)
    double decay_r2 = 0.0;
};

struct BoundStateSet {
    int half_width = 0;
    std::uint64_t field_hash = 0;
    std::vector<BoundState> states;

    bool empty() const { return states.empty(); }
    std::size_t size() const { return states.size(); }
};

/// Localized eigenpairs of the truncated evolution. A candidate is accepted
/// only if its mass beyond |x| > L/2 is negligible and its eigenphase is
/// reproduced both at doubled half-width and under the swapped boundary rule.
BoundStateSet point_spectrum(const TruncatedEvolution& trunc, const CoinField& field);

/// sum_n |<eta_n, psi0>|^2. The state window must lie inside [-L, L] and the
/// set must come from the same coin field.
double point_mass_weight(const BoundStateSet& bs, const WalkState& psi0);

/// View a truncated eigenvector as a walk state on its window.
WalkState bound_state_as_walk_state(const BoundState& state, int half_width);

}  // namespace qwalk
