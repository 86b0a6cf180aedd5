#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "qwalk/coin.hpp"

namespace qwalk {

/// Finitely supported section of l2(Z; C^2). The window grows one site per
/// step, so the dynamics carry no truncation error; amplitudes outside the
/// window are identically zero.
struct WalkState {
    int x_min = 0;
    std::vector<Spinor> amplitudes;
    std::int64_t time = 0;

    int x_max() const { return x_min + static_cast<int>(amplitudes.size()) - 1; }
    int window_size() const { return static_cast<int>(amplitudes.size()); }

    Spinor at(int x) const;
    double squared_norm() const;
    double norm() const;
};

WalkState delta_state(int site, const Spinor& spinor);

/// Gaussian-modulated plane wave exp(-(x-c)^2/(4 sigma^2)) exp(i k0 x) spinor,
/// truncated at |x-c| > 8 sigma and normalized.
WalkState gaussian_packet(int center, double sigma, double k0, const Spinor& spinor);

WalkState step_forward(const WalkState& state, const CoinField& field);

/// Inverse step, applied as the adjoint coin after the inverse shift.
WalkState step_backward(const WalkState& state, const CoinField& field);

enum class Direction { forward, backward };

WalkState evolve(const WalkState& state, const CoinField& field, int n,
                 Direction dir = Direction::forward);

struct PositionDistribution {
    int x_min = 0;
    std::vector<double> prob;

    int x_max() const { return x_min + static_cast<int>(prob.size()) - 1; }
    double at(int x) const;
    double total() const;
    /// E[X^m] of the site index.
    double moment(int m) const;
};

/// Site-wise squared norms of a normalized state. Rejects states whose norm
/// deviates from 1 by more than 1e-6.
PositionDistribution position_distribution(const WalkState& state);

/// l2 distance between two states with arbitrary windows.
double state_distance(const WalkState& a, const WalkState& b);

Complex inner_product(const WalkState& a, const WalkState& b);

}  // namespace qwalk
