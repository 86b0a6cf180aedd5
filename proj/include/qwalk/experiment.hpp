#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/measure.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/wave.hpp"

namespace qwalk {

struct InitialStateSpec {
    enum class Type { spinor, packet, random_spinor };
    Type type = Type::spinor;
    int site = 0;
    Complex alpha{1.0, 0.0};
    Complex beta{0.0, 0.0};
    // packet parameters
    int center = 0;
    double sigma = 10.0;
    double k0 = 0.0;
    Spinor packet_spinor{Complex(1.0, 0.0), Complex(0.0, 0.0)};
};

struct ExperimentConfig {
    CoinField field = CoinField::homogeneous(coins::hadamard());
    InitialStateSpec initial;
    int horizon = 2000;
    int grid_size = 16384;
    int truncation = 200;
    Boundary boundary = Boundary::reflecting;
    std::vector<int> probe_times = default_probe_times();
    int wave_steps = 512;
    std::vector<int> checkpoints;  // defaults to {horizon}
    std::vector<double> xi_grid = {1.0, -1.0, 2.0, -2.0, 4.0, -4.0};
    int trace_radius = 1000;
    std::uint64_t seed = 0;
};

/// Parse and validate a config document. Throws ConfigError on any invalid
/// or missing entry.
ExperimentConfig parse_config_string(const std::string& json_text);
ExperimentConfig parse_config_file(const std::string& path);

/// Realize the configured initial state (random spinors are drawn from the
/// seeded generator, deterministically).
WalkState initial_state(const ExperimentConfig& cfg);

/// Law of X_t/t read off a position distribution: one weighted point per
/// occupied site at v = x/t. Requires time >= 1.
VelocityMeasure empirical_velocity_law(const WalkState& state);

/// Sup distance between right-continuous CDFs, probed on the union of the
/// empirical measure's point locations and a 2001-point uniform grid on
/// [-1, 1].
double ks_distance(const VelocityMeasure& empirical, const VelocityMeasure& reference);

struct EvolutionResult {
    std::vector<std::pair<int, PositionDistribution>> checkpoints;
    double mean_velocity = 0.0;         // E[X_t/t] at the horizon
    double second_moment = 0.0;         // E[(X_t/t)^2] at the horizon
    double norm_drift = 0.0;            // | ||psi_t|| - 1 |
    WalkState final_state;
};

EvolutionResult run_evolution(const ExperimentConfig& cfg);

struct ComparisonReport {
    double ks_distance = 0.0;
    std::array<double, 2> moment_errors{};            // m = 1, 2
    std::vector<std::pair<double, double>> charfn_errors;  // (xi, error)
    double charfn_error_max = 0.0;
    double atom_weight = 0.0;          // theoretical point mass at zero
    double atom_weight_error = 0.0;    // vs empirical trapped mass P(|X_t| <= 20)
    double raw_mixture_mass = 0.0;     // atom + cloud mass before rescaling
};

struct LimitCompareResult {
    ComparisonReport report;
    VelocityMeasure theoretical;
    VelocityMeasure empirical;
};

/// Build the theoretical limit law (free pushforward, or the spectral +
/// backward-wave mixture for nontrivial fields), the exact empirical law of
/// X_t/t at the horizon, and their comparison.
LimitCompareResult run_limit_compare(const ExperimentConfig& cfg);

struct WaveProbeResult {
    WaveProbe forward;
    WaveProbe backward;
    bool forward_decreasing = false;
    bool backward_decreasing = false;
    double point_mass_removed = 0.0;  // overlap taken out before the backward probe
};

WaveProbeResult run_wave_probe(const ExperimentConfig& cfg);

struct SpectrumResult {
    BoundStateSet states;
    double point_mass = 0.0;  // weight of the configured initial state
};

SpectrumResult run_spectrum(const ExperimentConfig& cfg);

TraceNormDiagnostic run_trace_norm(const ExperimentConfig& cfg);

}  // namespace qwalk
