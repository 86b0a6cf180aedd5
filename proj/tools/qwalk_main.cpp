// Command-line harness: config-driven quantum walk experiments with CSV and
// JSON summaries per run.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/experiment.hpp"
#include "qwalk/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qwalk;

namespace {

struct CommonArgs {
    std::string config;
    std::string out = ".";
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config, "experiment config (json)")->required();
    cmd->add_option("--out", args.out, "output directory");
    cmd->add_option("--seed", args.seed, "override the config seed");
}

ExperimentConfig load_config(const CommonArgs& args) {
    ExperimentConfig cfg = parse_config_file(args.config);
    if (args.seed) cfg.seed = *args.seed;
    fs::create_directories(args.out);
    return cfg;
}

void write_summary(const std::string& out_dir, const json& summary) {
    std::ofstream os(fs::path(out_dir) / "summary.json");
    if (!os) throw ConfigError("cannot write summary.json");
    os << summary.dump(2) << '\n';
}

std::ofstream open_out(const std::string& out_dir, const std::string& name) {
    std::ofstream os(fs::path(out_dir) / name);
    if (!os) throw ConfigError("cannot write " + name);
    return os;
}

json probe_summary(const WaveProbe& probe, bool decreasing) {
    json j;
    j["times"] = probe.times;
    j["residuals"] = probe.residuals;
    j["norms"] = probe.norms;
    j["residuals_decreasing"] = decreasing;
    j["final_residual"] = probe.residuals.empty() ? 0.0 : probe.residuals.back();
    return j;
}

int cmd_evolve(const CommonArgs& args) {
    const ExperimentConfig cfg = load_config(args);
    const EvolutionResult res = run_evolution(cfg);
    for (const auto& [t, dist] : res.checkpoints) {
        auto os = open_out(args.out, "dist_t" + std::to_string(t) + ".csv");
        write_distribution_csv(os, dist);
    }
    {
        auto os = open_out(args.out, "final_state.csv");
        write_state_csv(os, res.final_state);
    }
    json summary;
    summary["run"] = "evolve";
    summary["field"] = json::parse(field_to_json(cfg.field));
    summary["horizon"] = cfg.horizon;
    summary["mean_velocity"] = res.mean_velocity;
    summary["second_moment"] = res.second_moment;
    summary["norm_drift"] = res.norm_drift;
    write_summary(args.out, summary);
    return 0;
}

int cmd_limit_compare(const CommonArgs& args) {
    const ExperimentConfig cfg = load_config(args);
    const LimitCompareResult res = run_limit_compare(cfg);
    {
        auto os = open_out(args.out, "theoretical.csv");
        write_measure_csv(os, res.theoretical);
    }
    {
        auto os = open_out(args.out, "empirical.csv");
        write_measure_csv(os, res.empirical);
    }
    {
        auto os = open_out(args.out, "bands.csv");
        write_band_csv(os, BandDecomposition(cfg.field.limit_coin(), cfg.grid_size));
    }
    json summary;
    summary["run"] = "limit-compare";
    summary["field"] = json::parse(field_to_json(cfg.field));
    summary["horizon"] = cfg.horizon;
    summary["ks_distance"] = res.report.ks_distance;
    summary["moment_errors"] = res.report.moment_errors;
    json cf = json::array();
    for (const auto& [xi, err] : res.report.charfn_errors) {
        cf.push_back({{"xi", xi}, {"error", err}});
    }
    summary["charfn_errors"] = cf;
    summary["charfn_error_max"] = res.report.charfn_error_max;
    summary["atom_weight"] = res.report.atom_weight;
    summary["atom_weight_error"] = res.report.atom_weight_error;
    summary["raw_mixture_mass"] = res.report.raw_mixture_mass;
    write_summary(args.out, summary);
    return 0;
}

int cmd_wave_probe(const CommonArgs& args) {
    const ExperimentConfig cfg = load_config(args);
    const WaveProbeResult res = run_wave_probe(cfg);
    {
        auto os = open_out(args.out, "probe_forward.csv");
        write_probe_csv(os, res.forward);
    }
    {
        auto os = open_out(args.out, "probe_backward.csv");
        write_probe_csv(os, res.backward);
    }
    json summary;
    summary["run"] = "wave-probe";
    summary["field"] = json::parse(field_to_json(cfg.field));
    summary["forward"] = probe_summary(res.forward, res.forward_decreasing);
    summary["backward"] = probe_summary(res.backward, res.backward_decreasing);
    summary["point_mass_removed"] = res.point_mass_removed;
    write_summary(args.out, summary);
    return 0;
}

int cmd_spectrum(const CommonArgs& args) {
    const ExperimentConfig cfg = load_config(args);
    const SpectrumResult res = run_spectrum(cfg);
    write_boundstates_json(args.out, "bound_states", res.states);
    json summary;
    summary["run"] = "spectrum";
    summary["field"] = json::parse(field_to_json(cfg.field));
    summary["truncation"] = cfg.truncation;
    summary["boundary"] = boundary_name(cfg.boundary);
    summary["count"] = res.states.size();
    json thetas = json::array();
    for (const auto& s : res.states.states) thetas.push_back(s.theta);
    summary["eigenphases"] = thetas;
    summary["point_mass"] = res.point_mass;
    write_summary(args.out, summary);
    return 0;
}

int cmd_trace_norm(const CommonArgs& args) {
    const ExperimentConfig cfg = load_config(args);
    const TraceNormDiagnostic res = run_trace_norm(cfg);
    {
        auto os = open_out(args.out, "tracenorm.csv");
        write_tracenorm_csv(os, res);
    }
    bool within = true;
    if (res.has_bound) {
        for (std::size_t i = 0; i < res.partial_sum.size(); ++i) {
            within = within && res.partial_sum[i] <= res.bound[i];
        }
    }
    json summary;
    summary["run"] = "trace-norm";
    summary["field"] = json::parse(field_to_json(cfg.field));
    summary["radius"] = cfg.trace_radius;
    summary["partial_sum"] = res.partial_sum.empty() ? 0.0 : res.partial_sum.back();
    summary["defect_term"] = res.defect_term;
    summary["has_bound"] = res.has_bound;
    if (res.has_bound) {
        summary["bound"] = res.bound.back();
        summary["within_bound"] = within;
    }
    write_summary(args.out, summary);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"position-dependent coined quantum walks on Z: evolution, limit "
                 "laws, wave-operator probes, bound states"};
    app.require_subcommand(1);

    CommonArgs evolve_args, limit_args, wave_args, spectrum_args, trace_args;
    add_common(app.add_subcommand("evolve", "evolve a state and emit distributions"),
               evolve_args);
    add_common(app.add_subcommand("limit-compare",
                                  "compare the empirical law of X_t/t with the limit measure"),
               limit_args);
    add_common(app.add_subcommand("wave-probe", "Cauchy probes of the wave compositions"),
               wave_args);
    add_common(app.add_subcommand("spectrum", "localized eigenpairs of the truncated evolution"),
               spectrum_args);
    add_common(app.add_subcommand("trace-norm", "singular-value diagnostic of the perturbation"),
               trace_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand("evolve")) return cmd_evolve(evolve_args);
        if (app.got_subcommand("limit-compare")) return cmd_limit_compare(limit_args);
        if (app.got_subcommand("wave-probe")) return cmd_wave_probe(wave_args);
        if (app.got_subcommand("spectrum")) return cmd_spectrum(spectrum_args);
        if (app.got_subcommand("trace-norm")) return cmd_trace_norm(trace_args);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const FilterError& e) {
        std::cerr << "numerical filter: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
