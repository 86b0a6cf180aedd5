#include "qwalk/wave.hpp"

#include <algorithm>
#include <cmath>

#include "qwalk/errors.hpp"

namespace qwalk {

WalkState wave_forward(const WalkState& psi, const CoinField& field, int t) {
    if (t < 0) throw ConfigError("wave time must be nonnegative");
    if (field.is_trivial()) return psi;  // the composition collapses exactly
    const CoinField homog = CoinField::homogeneous(field.limit_coin());
    WalkState st = evolve(psi, homog, t, Direction::forward);
    return evolve(st, field, t, Direction::backward);
}

WalkState wave_backward(const WalkState& psi, const CoinField& field, int t) {
    if (t < 0) throw ConfigError("wave time must be nonnegative");
    if (field.is_trivial()) return psi;
    const CoinField homog = CoinField::homogeneous(field.limit_coin());
    WalkState st = evolve(psi, field, t, Direction::forward);
    return evolve(st, homog, t, Direction::backward);
}

std::vector<int> default_probe_times() { return {64, 128, 256, 512, 1024}; }

WaveProbe probe_wave(const WalkState& psi, const CoinField& field, std::vector<int> times,
                     WaveDirection direction) {
    if (times.empty()) throw ConfigError("probe schedule is empty");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < 0 || (i > 0 && times[i] <= times[i - 1])) {
            throw ConfigError("probe times must be strictly increasing and nonnegative");
        }
    }
    WaveProbe probe;
    probe.direction = direction;
    probe.times = std::move(times);
    for (int t : probe.times) {
        WalkState v = direction == WaveDirection::forward ? wave_forward(psi, field, t)
                                                          : wave_backward(psi, field, t);
        probe.norms.push_back(v.norm());
        probe.vectors.push_back(std::move(v));
    }
    for (std::size_t i = 0; i + 1 < probe.vectors.size(); ++i) {
        probe.residuals.push_back(state_distance(probe.vectors[i + 1], probe.vectors[i]));
    }
    return probe;
}

double TraceNormDiagnostic::partial_at(int radius) const {
    if (radii.empty() || radius < radii.front()) return 0.0;
    const auto idx = std::min<std::size_t>(radius - radii.front(), partial_sum.size() - 1);
    return partial_sum[idx];
}

TraceNormDiagnostic trace_norm_partial(const CoinField& field, int max_radius) {
    if (max_radius < 1) throw ConfigError("trace norm radius must be positive");
    TraceNormDiagnostic d;
    d.has_bound = field.has_decay_params();
    const Matrix2 c0 = field.limit_coin();

    {
        const auto sv = singular_values(field.coin(0) - c0);
        d.defect_term = sv[0] + sv[1];
    }

    double sum = 0.0, bnd = 0.0;
    d.radii.reserve(max_radius);
    d.partial_sum.reserve(max_radius);
    d.bound.reserve(max_radius);
    for (int x = 1; x <= max_radius; ++x) {
        for (int sx : {x, -x}) {
            const auto sv = singular_values(field.coin(sx) - c0);
            sum += sv[0] + sv[1];
        }
        if (d.has_bound) {
            bnd += 2.0 * 2.0 * field.c1() * std::pow(static_cast<double>(x), -1.0 - field.eps());
        }
        d.radii.push_back(x);
        d.partial_sum.push_back(sum);
        d.bound.push_back(d.has_bound ? bnd : 0.0);
    }
    return d;
}

VelocityMeasure perturbed_velocity_measure(const WalkState& psi0, const CoinField& field,
                                           const BandDecomposition& bands,
                                           const BoundStateSet& bound_states, int t) {
    if (bound_states.field_hash != field.hash()) {
        throw ConfigError("bound-state set belongs to a different coin field");
    }
    if (std::abs(psi0.norm() - 1.0) > 1e-6) {
        throw ConfigError("perturbed measure needs a normalized state");
    }
    if (field.is_trivial()) {
        return velocity_pushforward(psi0, bands);
    }

    // split off the localized part
    double w_p = 0.0;
    WalkState ac = psi0;
    if (!bound_states.empty()) {
        w_p = point_mass_weight(bound_states, psi0);
        const int L = bound_states.half_width;
        WalkState acc;
        acc.x_min = -L;
        acc.amplitudes.assign(2 * L + 1, Spinor::Zero());
        for (int x = psi0.x_min; x <= psi0.x_max(); ++x) {
            acc.amplitudes[x + L] = psi0.at(x);
        }
        for (const auto& st : bound_states.states) {
            const WalkState eta = bound_state_as_walk_state(st, L);
            const Complex ov = inner_product(eta, acc);
            for (int i = 0; i <= 2 * L; ++i) {
                acc.amplitudes[i] -= ov * eta.amplitudes[i];
            }
        }
        ac = std::move(acc);
    }

    const double ac_mass = ac.squared_norm();
    std::vector<WeightedPoint> atoms;
    if (w_p > 0.0) atoms.push_back({0.0, w_p});
    if (ac_mass <= 1e-12) {
        return VelocityMeasure(std::move(atoms), {});
    }

    const double ac_norm = std::sqrt(ac_mass);
    for (auto& a : ac.amplitudes) a /= ac_norm;
    const WalkState transported = wave_backward(ac, field, t);
    VelocityMeasure cloud = velocity_pushforward(transported, bands);

    std::vector<WeightedPoint> samples;
    for (const auto& p : cloud.samples()) samples.push_back({p.v, p.weight * ac_mass});
    for (const auto& p : cloud.atoms()) samples.push_back({p.v, p.weight * ac_mass});

    VelocityMeasure mu(std::move(atoms), std::move(samples));
    mu.rescale_cloud(1.0 - w_p);
    return mu;
}

}  // namespace qwalk
