#pragma once

#include <vector>

#include "qwalk/measure.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

/// t steps under the homogeneous limit evolution followed by t inverse steps
/// under the full field: the finite-time wave composition applied to psi.
WalkState wave_forward(const WalkState& psi, const CoinField& field, int t);

/// t steps under the full field followed by t inverse steps under the
/// homogeneous limit evolution.
WalkState wave_backward(const WalkState& psi, const CoinField& field, int t);

enum class WaveDirection { forward, backward };

struct WaveProbe {
    WaveDirection direction = WaveDirection::forward;
    std::vector<int> times;
    std::vector<WalkState> vectors;
    std::vector<double> norms;
    std::vector<double> residuals;  // ||vec[i+1] - vec[i]||, size times-1
};

/// Strong-limit probe: apply the wave composition at each listed time and
/// record consecutive differences. Times must be strictly increasing.
WaveProbe probe_wave(const WalkState& psi, const CoinField& field,
                     std::vector<int> times, WaveDirection direction);

std::vector<int> default_probe_times();  // 64, 128, ..., 1024

/// Singular-value diagnostic of the site-wise coin perturbation:
/// cumulative sums of sqrt(t_1(x)) + sqrt(t_2(x)) over 0 < |x| <= X, where
/// t_i(x) are the eigenvalues of (C(x)-C0)*(C(x)-C0), next to the analytic
/// bound 2 c1 sum |x|^(-1-eps) when decay parameters are present.
struct TraceNormDiagnostic {
    std::vector<int> radii;
    std::vector<double> partial_sum;
    std::vector<double> bound;
    bool has_bound = false;
    double defect_term = 0.0;  // x = 0 contribution, reported separately

    double partial_at(int radius) const;
};

TraceNormDiagnostic trace_norm_partial(const CoinField& field, int max_radius);

/// Mixture law of the perturbed walk: point mass sum_n |<eta_n, psi0>|^2 at
/// zero plus the pushforward of the backward-wave-transported remainder,
/// with the cloud rescaled onto the remaining mass. The bound-state set must
/// match the field.
VelocityMeasure perturbed_velocity_measure(const WalkState& psi0, const CoinField& field,
                                           const BandDecomposition& bands,
                                           const BoundStateSet& bound_states, int t);

}  // namespace qwalk
