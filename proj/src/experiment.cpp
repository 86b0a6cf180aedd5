#include "qwalk/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "field_json.hpp"
#include "qwalk/errors.hpp"

namespace qwalk {

using nlohmann::json;

namespace {

Complex complex_from_json(const json& j) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2) {
        return Complex(j.at(0).get<double>(), j.at(1).get<double>());
    }
    throw ConfigError("complex values are a number or a [re, im] pair");
}

InitialStateSpec parse_initial(const json& j) {
    InitialStateSpec s;
    const std::string type = j.value("type", std::string("spinor"));
    if (type == "spinor") {
        s.type = InitialStateSpec::Type::spinor;
        s.site = j.value("site", 0);
        s.alpha = complex_from_json(j.value("alpha", json(1.0)));
        s.beta = complex_from_json(j.value("beta", json(0.0)));
        if (std::abs(std::norm(s.alpha) + std::norm(s.beta) - 1.0) > 1e-10) {
            throw ConfigError("initial spinor must satisfy |alpha|^2 + |beta|^2 = 1");
        }
    } else if (type == "packet") {
        s.type = InitialStateSpec::Type::packet;
        s.center = j.value("center", 0);
        s.sigma = j.value("sigma", 10.0);
        s.k0 = j.value("k0", 0.0);
        if (!(s.sigma > 0.0)) throw ConfigError("packet sigma must be positive");
        if (j.contains("spinor")) {
            const json& sp = j.at("spinor");
            if (!sp.is_array() || sp.size() != 2) {
                throw ConfigError("packet spinor is a pair of complex values");
            }
            s.packet_spinor =
                Spinor(complex_from_json(sp.at(0)), complex_from_json(sp.at(1)));
        }
        if (s.packet_spinor.norm() == 0.0) throw ConfigError("packet spinor must be nonzero");
    } else if (type == "random_spinor") {
        s.type = InitialStateSpec::Type::random_spinor;
        s.site = j.value("site", 0);
    } else {
        throw ConfigError("unknown initial state type: " + type);
    }
    return s;
}

}  // namespace

ExperimentConfig parse_config_string(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    ExperimentConfig cfg;
    try {
        if (!j.contains("field")) throw ConfigError("config needs a 'field'");
        cfg.field = detail::field_from_json_object(j.at("field"));
        if (j.contains("initial")) cfg.initial = parse_initial(j.at("initial"));
        cfg.horizon = j.value("horizon", cfg.horizon);
        cfg.grid_size = j.value("grid_size", cfg.grid_size);
        cfg.truncation = j.value("truncation", cfg.truncation);
        if (j.contains("boundary")) {
            cfg.boundary = boundary_from_name(j.at("boundary").get<std::string>());
        }
        if (j.contains("probe_times")) {
            cfg.probe_times = j.at("probe_times").get<std::vector<int>>();
        }
        cfg.wave_steps = j.value("wave_steps", cfg.wave_steps);
        if (j.contains("checkpoints")) {
            cfg.checkpoints = j.at("checkpoints").get<std::vector<int>>();
        }
        if (j.contains("xi_grid")) {
            cfg.xi_grid = j.at("xi_grid").get<std::vector<double>>();
        }
        cfg.trace_radius = j.value("trace_radius", cfg.trace_radius);
        cfg.seed = j.value("seed", cfg.seed);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field error: ") + e.what());
    }

    if (cfg.horizon < 1) throw ConfigError("horizon must be at least 1");
    if (cfg.grid_size < 8) throw ConfigError("grid_size must be at least 8");
    if (cfg.truncation < 2) throw ConfigError("truncation must be at least 2");
    if (cfg.wave_steps < 0) throw ConfigError("wave_steps must be nonnegative");
    if (cfg.trace_radius < 1) throw ConfigError("trace_radius must be positive");
    if (cfg.checkpoints.empty()) cfg.checkpoints = {cfg.horizon};
    std::sort(cfg.checkpoints.begin(), cfg.checkpoints.end());
    cfg.checkpoints.erase(std::unique(cfg.checkpoints.begin(), cfg.checkpoints.end()),
                          cfg.checkpoints.end());
    for (int c : cfg.checkpoints) {
        if (c < 0 || c > cfg.horizon) {
            throw ConfigError("checkpoints must lie in [0, horizon]");
        }
    }
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_config_string(ss.str());
}

namespace {

// Deterministic standard normals from raw generator bits (Box-Muller),
// independent of the standard library's distribution internals.
double uniform01(std::mt19937_64& gen) {
    return (static_cast<double>(gen() >> 11) + 0.5) * 0x1p-53;
}

double normal(std::mt19937_64& gen) {
    const double u1 = uniform01(gen);
    const double u2 = uniform01(gen);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace

WalkState initial_state(const ExperimentConfig& cfg) {
    switch (cfg.initial.type) {
        case InitialStateSpec::Type::spinor:
            return delta_state(cfg.initial.site, Spinor(cfg.initial.alpha, cfg.initial.beta));
        case InitialStateSpec::Type::packet:
            return gaussian_packet(cfg.initial.center, cfg.initial.sigma, cfg.initial.k0,
                                   cfg.initial.packet_spinor);
        case InitialStateSpec::Type::random_spinor: {
            std::mt19937_64 gen(cfg.seed);
            Spinor s(Complex(normal(gen), normal(gen)), Complex(normal(gen), normal(gen)));
            s.normalize();
            return delta_state(cfg.initial.site, s);
        }
    }
    throw ConfigError("unreachable initial state type");
}

VelocityMeasure empirical_velocity_law(const WalkState& state) {
    if (state.time < 1) {
        throw ConfigError("empirical law of X_t/t needs time >= 1");
    }
    const PositionDistribution dist = position_distribution(state);
    const double t = static_cast<double>(state.time);
    std::vector<WeightedPoint> atoms;
    for (int x = dist.x_min; x <= dist.x_max(); ++x) {
        const double p = dist.at(x);
        if (p > 0.0) atoms.push_back({x / t, p});
    }
    return VelocityMeasure(std::move(atoms), {});
}

double ks_distance(const VelocityMeasure& empirical, const VelocityMeasure& reference) {
    std::vector<double> probes;
    probes.reserve(empirical.atoms().size() + empirical.samples().size() + 2001);
    for (const auto& p : empirical.atoms()) probes.push_back(p.v);
    for (const auto& p : empirical.samples()) probes.push_back(p.v);
    for (int i = 0; i <= 2000; ++i) {
        probes.push_back(-1.0 + i * (2.0 / 2000.0));
    }
    double d = 0.0;
    for (double v : probes) {
        d = std::max(d, std::abs(empirical.cdf(v) - reference.cdf(v)));
    }
    return d;
}

EvolutionResult run_evolution(const ExperimentConfig& cfg) {
    EvolutionResult res;
    WalkState st = initial_state(cfg);
    std::size_t next_cp = 0;
    for (int t = 0; t <= cfg.horizon; ++t) {
        while (next_cp < cfg.checkpoints.size() && cfg.checkpoints[next_cp] == t) {
            res.checkpoints.emplace_back(t, position_distribution(st));
            ++next_cp;
        }
        if (t < cfg.horizon) st = step_forward(st, cfg.field);
    }
    const PositionDistribution final_dist = position_distribution(st);
    const double t = static_cast<double>(cfg.horizon);
    res.mean_velocity = final_dist.moment(1) / t;
    res.second_moment = final_dist.moment(2) / (t * t);
    res.norm_drift = std::abs(st.norm() - 1.0);
    res.final_state = std::move(st);
    return res;
}

namespace {

double atom_mass_at_zero(const VelocityMeasure& mu) {
    double w = 0.0;
    for (const auto& p : mu.atoms()) {
        if (std::abs(p.v) <= 1e-12) w += p.weight;
    }
    return w;
}

}  // namespace

LimitCompareResult run_limit_compare(const ExperimentConfig& cfg) {
    LimitCompareResult out;
    const WalkState psi0 = initial_state(cfg);
    const BandDecomposition bands(cfg.field.limit_coin(), cfg.grid_size);

    double raw_mixture = 1.0;
    if (cfg.field.is_trivial()) {
        out.theoretical = velocity_pushforward(psi0, bands);
        raw_mixture = out.theoretical.total_mass();
    } else {
        const TruncatedEvolution trunc = build_truncated(cfg.field, cfg.truncation, cfg.boundary);
        const BoundStateSet bs = point_spectrum(trunc, cfg.field);
        out.theoretical =
            perturbed_velocity_measure(psi0, cfg.field, bands, bs, cfg.wave_steps);
        raw_mixture = atom_mass_at_zero(out.theoretical) + out.theoretical.raw_cloud_mass();
    }

    const WalkState psit = evolve(psi0, cfg.field, cfg.horizon);
    out.empirical = empirical_velocity_law(psit);

    ComparisonReport& r = out.report;
    r.ks_distance = ks_distance(out.empirical, out.theoretical);
    r.moment_errors[0] = std::abs(out.empirical.mean() - out.theoretical.mean());
    r.moment_errors[1] = std::abs(out.empirical.second_moment() - out.theoretical.second_moment());
    r.charfn_error_max = 0.0;
    // both laws are compared as probability measures: normalize the
    // characteristic functions by the (rounding-level) total masses, which
    // pins the xi = 0 error at exactly zero
    const double me = out.empirical.total_mass();
    const double mt = out.theoretical.total_mass();
    for (double xi : cfg.xi_grid) {
        const double e = std::abs(out.empirical.characteristic(xi) / me -
                                  out.theoretical.characteristic(xi) / mt);
        r.charfn_errors.emplace_back(xi, e);
        r.charfn_error_max = std::max(r.charfn_error_max, e);
    }
    r.atom_weight = atom_mass_at_zero(out.theoretical);
    const PositionDistribution dist = position_distribution(psit);
    double trapped = 0.0;
    for (int x = -20; x <= 20; ++x) trapped += dist.at(x);
    r.atom_weight_error = std::abs(r.atom_weight - trapped);
    r.raw_mixture_mass = raw_mixture;
    return out;
}

WaveProbeResult run_wave_probe(const ExperimentConfig& cfg) {
    WaveProbeResult res;
    const WalkState psi = initial_state(cfg);
    res.forward = probe_wave(psi, cfg.field, cfg.probe_times, WaveDirection::forward);

    WalkState backward_input = psi;
    if (!cfg.field.is_trivial()) {
        const TruncatedEvolution trunc = build_truncated(cfg.field, cfg.truncation, cfg.boundary);
        const BoundStateSet bs = point_spectrum(trunc, cfg.field);
        if (!bs.empty()) {
            const int L = bs.half_width;
            WalkState ac;
            ac.x_min = std::min(psi.x_min, -L);
            const int hi = std::max(psi.x_max(), L);
            ac.amplitudes.assign(hi - ac.x_min + 1, Spinor::Zero());
            for (int x = psi.x_min; x <= psi.x_max(); ++x) {
                ac.amplitudes[x - ac.x_min] = psi.at(x);
            }
            double removed = 0.0;
            for (const auto& st : bs.states) {
                const WalkState eta = bound_state_as_walk_state(st, L);
                const Complex ov = inner_product(eta, ac);
                removed += std::norm(ov);
                for (int x = -L; x <= L; ++x) {
                    ac.amplitudes[x - ac.x_min] -= ov * eta.amplitudes[x + L];
                }
            }
            if (removed < 1.0 - 1e-6) {
                // drop the localized part; the probe converges on the rest
                const double nrm = ac.norm();
                for (auto& a : ac.amplitudes) a /= nrm;
                backward_input = std::move(ac);
                res.point_mass_removed = removed;
            }
            // an (almost) pure bound state is probed as-is and flagged by the
            // non-decaying residuals
        }
    }
    res.backward = probe_wave(backward_input, cfg.field, cfg.probe_times, WaveDirection::backward);

    auto decreasing = [](const std::vector<double>& r) {
        bool all_zero = true;
        for (double x : r) all_zero = all_zero && x == 0.0;
        if (all_zero) return true;
        for (std::size_t i = 0; i + 1 < r.size(); ++i) {
            if (!(r[i + 1] < r[i])) return false;
        }
        return true;
    };
    res.forward_decreasing = decreasing(res.forward.residuals);
    res.backward_decreasing = decreasing(res.backward.residuals);
    return res;
}

SpectrumResult run_spectrum(const ExperimentConfig& cfg) {
    SpectrumResult res;
    const WalkState psi0 = initial_state(cfg);
    if (psi0.x_min < -cfg.truncation || psi0.x_max() > cfg.truncation) {
        throw ConfigError("initial state lies outside the truncation window");
    }
    const TruncatedEvolution trunc = build_truncated(cfg.field, cfg.truncation, cfg.boundary);
    res.states = point_spectrum(trunc, cfg.field);
    res.point_mass = res.states.empty() ? 0.0 : point_mass_weight(res.states, psi0);
    return res;
}

TraceNormDiagnostic run_trace_norm(const ExperimentConfig& cfg) {
    return trace_norm_partial(cfg.field, cfg.trace_radius);
}

}  // namespace qwalk
