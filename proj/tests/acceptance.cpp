// End-to-end acceptance suite. Each check prints one PASS/FAIL line with the
// measured quantity next to its pinned tolerance; the exit code is the number
// of failures.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "qwalk/band.hpp"
#include "qwalk/experiment.hpp"
#include "qwalk/konno.hpp"
#include "qwalk/measure.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/walk.hpp"
#include "qwalk/wave.hpp"
#include "support.hpp"

using namespace qwalk;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] %02d %s: %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

double circular_distance(double a, double b) {
    const double d = std::abs(a - b);
    return std::min(d, 2.0 * M_PI - d);
}

CoinField defect_field() { return CoinField::one_defect(coins::hadamard(), coins::identity()); }

// KS distance of an empirical point law against a continuous CDF, probed on
// the empirical points plus the uniform 2001-point grid.
double ks_against_cdf(const VelocityMeasure& emp, double c, double r) {
    std::vector<double> probes;
    for (const auto& p : emp.atoms()) probes.push_back(p.v);
    for (const auto& p : emp.samples()) probes.push_back(p.v);
    for (int i = 0; i <= 2000; ++i) probes.push_back(-1.0 + i * (2.0 / 2000.0));
    std::sort(probes.begin(), probes.end());
    const std::vector<double> ref = testsupport::oracle_limit_cdf_batch(probes, c, r);
    double d = 0.0;
    for (std::size_t i = 0; i < probes.size(); ++i) {
        d = std::max(d, std::abs(emp.cdf(probes[i]) - ref[i]));
    }
    return d;
}

std::vector<double> localized_thetas(const CoinField& field, int half_width, Boundary boundary) {
    const TruncatedEvolution t = build_truncated(field, half_width, boundary);
    const UnitaryEigensystem eig = unitary_eigensystem(t.matrix);
    std::vector<double> out;
    for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
        double mass = 0.0;
        for (int s = 0; s < 2 * (2 * half_width + 1); ++s) {
            const int x = s / 2 - half_width;
            if (2 * std::abs(x) > half_width) mass += std::norm(eig.vectors(s, i));
        }
        if (mass <= 1e-8) {
            double th = std::arg(eig.eigenvalues(i));
            if (th < 0.0) th += 2.0 * M_PI;
            out.push_back(th);
        }
    }
    return out;
}

void criterion_1_unitarity() {
    WalkState psi = delta_state(0, Spinor(1.0, 0.0));
    psi = evolve(psi, defect_field(), 5000);
    const double drift = std::abs(psi.norm() - 1.0);
    const bool pass = drift <= 1e-10 && psi.window_size() <= 10001;
    report(1, "unitarity at t=5000 (one-defect)", pass,
           "drift=" + fmt(drift) + " <= 1e-10, window=" + std::to_string(psi.window_size()));
}

void criterion_2_two_step_law() {
    const auto field = CoinField::homogeneous(coins::hadamard());
    const auto dist = position_distribution(evolve(delta_state(0, Spinor(1.0, 0.0)), field, 2));
    const double err = std::max({std::abs(dist.at(-2) - 0.25), std::abs(dist.at(0) - 0.5),
                                 std::abs(dist.at(2) - 0.25), dist.at(-1), dist.at(1)});
    report(2, "two-step Hadamard law {1/4, 1/2, 1/4}", err <= 1e-12,
           "max error=" + fmt(err) + " <= 1e-12");
}

void criterion_3_updown_atoms() {
    auto cfg = parse_config_string(R"({
        "field": {"kind": "homogeneous", "C0": [1,0,0,0,0,0,-1,0]},
        "initial": {"type": "spinor", "site": 0, "alpha": [0.6, 0], "beta": [0, 0.8]},
        "horizon": 500, "grid_size": 4096})");
    const LimitCompareResult res = run_limit_compare(cfg);
    report(3, "updown empirical law equals the two-atom measure",
           res.report.ks_distance <= 1e-10, "ks=" + fmt(res.report.ks_distance) + " <= 1e-10");
}

void criterion_4_flip_moment() {
    const auto field = CoinField::homogeneous(coins::flip());
    const WalkState psi = evolve(delta_state(0, Spinor(1.0, 0.0)), field, 1000);
    const auto dist = position_distribution(psi);
    const double m2 = dist.moment(2) / (1000.0 * 1000.0);
    report(4, "flip coin keeps E[(X/t)^2] tiny", m2 <= 1e-5, "m2=" + fmt(m2) + " <= 1e-5");
}

void criterion_5_konno_limit() {
    const auto field = CoinField::homogeneous(coins::hadamard());
    const WalkState psi = evolve(delta_state(0, Spinor(1.0, 0.0)), field, 2000);
    const VelocityMeasure emp = empirical_velocity_law(psi);
    const double ks = ks_against_cdf(emp, 1.0, 1.0 / std::sqrt(2.0));
    const double m2_err = std::abs(emp.second_moment() - (1.0 - 1.0 / std::sqrt(2.0)));
    const bool pass = ks <= 0.05 && m2_err <= 0.01;
    report(5, "free Hadamard weak limit at t=2000", pass,
           "ks=" + fmt(ks) + " <= 0.05, m2 error=" + fmt(m2_err) + " <= 0.01");
}

void criterion_6_group_velocity() {
    std::mt19937_64 gen(12345);
    std::vector<Matrix2> coins_to_test{coins::hadamard()};
    for (int i = 0; i < 10; ++i) coins_to_test.push_back(testsupport::random_unitary(gen));
    double worst = 0.0;
    const double h = 1e-5;
    for (const Matrix2& c0 : coins_to_test) {
        const BandDecomposition bands(c0, 512);
        for (const auto& s : bands.samples()) {
            if (s.degenerate) continue;
            for (int j = 0; j < 2; ++j) {
                auto lambda_near = [&](double kk) {
                    const EigenPair2 e = eigendecompose_symbol(symbol(kk, c0));
                    const double o0 = std::abs(e.vectors[0].dot(s.vectors[j]));
                    const double o1 = std::abs(e.vectors[1].dot(s.vectors[j]));
                    return o0 >= o1 ? e.lambda[0] : e.lambda[1];
                };
                const double vfd =
                    -std::arg(lambda_near(s.k + h) / lambda_near(s.k - h)) / (2.0 * h);
                worst = std::max(worst, std::abs(vfd - s.velocity[j]));
            }
        }
    }
    report(6, "group velocity vs phase derivative (Hadamard + 10 random coins)", worst <= 1e-8,
           "max error=" + fmt(worst) + " <= 1e-8");
}

void criterion_7_pushforward(const BandDecomposition& bands16k) {
    const VelocityMeasure mu = velocity_pushforward(delta_state(0, Spinor(1.0, 0.0)), bands16k);
    std::vector<double> vs;
    for (const auto& p : mu.samples()) vs.push_back(p.v);
    const std::vector<double> ref =
        testsupport::oracle_limit_cdf_batch(vs, 1.0, 1.0 / std::sqrt(2.0));
    double sup = 0.0;
    double cum = 0.0;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        sup = std::max(sup, std::abs(cum - ref[i]));
        cum += mu.samples()[i].weight;
        sup = std::max(sup, std::abs(cum - ref[i]));
    }
    report(7, "pushforward cloud vs quadrature cdf (N=2^14)", sup <= 1e-2,
           "sup error=" + fmt(sup) + " <= 1e-2");
}

void criterion_8_localization(const BoundStateSet& bs) {
    const auto field = defect_field();
    const double w_p = point_mass_weight(bs, delta_state(0, Spinor(1.0, 0.0)));

    WalkState psi = evolve(delta_state(0, Spinor(1.0, 0.0)), field, 499);
    double avg = 0.0;
    int count = 0;
    for (int t = 500; t <= 1000; ++t) {
        psi = step_forward(psi, field);
        const auto dist = position_distribution(psi);
        for (int x = -20; x <= 20; ++x) avg += dist.at(x);
        ++count;
    }
    avg /= count;
    const double dyn_err = std::abs(avg - w_p);

    const std::vector<double> at_400 = localized_thetas(field, 400, Boundary::reflecting);
    double worst_shift = bs.empty() ? 1e9 : 0.0;
    for (const auto& st : bs.states) {
        double best = 1e9;
        for (double th : at_400) best = std::min(best, circular_distance(st.theta, th));
        worst_shift = std::max(worst_shift, best);
    }
    const bool pass = !bs.empty() && dyn_err <= 1e-2 && worst_shift <= 1e-8;
    report(8, "localization weight and eigenphase stability", pass,
           "states=" + std::to_string(bs.size()) + ", |time-avg trapped - w_p|=" + fmt(dyn_err) +
               " <= 1e-2, phase shift L=200->400 " + fmt(worst_shift) + " <= 1e-8");
}

void criterion_9_wave_cauchy() {
    const WalkState pk = gaussian_packet(-40, 10.0, 0.0, Spinor(1.0, 0.0));
    const WaveProbe probe =
        probe_wave(pk, defect_field(), {64, 128, 256, 512, 1024}, WaveDirection::forward);
    bool decreasing = true;
    for (std::size_t i = 0; i + 1 < probe.residuals.size(); ++i) {
        decreasing = decreasing && probe.residuals[i + 1] < probe.residuals[i];
    }
    const double final_res = probe.residuals.back();
    std::string detail = "residuals=";
    for (double r : probe.residuals) detail += fmt(r) + " ";
    detail += "final <= 1e-3";
    report(9, "wave-operator dyadic Cauchy probe", decreasing && final_res <= 1e-3, detail);
}

void criterion_10_mixture(const BandDecomposition& bands16k, const BoundStateSet& bs) {
    const auto field = defect_field();
    const WalkState psi0 = delta_state(0, Spinor(1.0, 0.0));
    const VelocityMeasure mu = perturbed_velocity_measure(psi0, field, bands16k, bs, 512);
    const double raw_mass = mu.atom_mass() + mu.raw_cloud_mass();

    const WalkState psit = evolve(psi0, field, 2000);
    const VelocityMeasure emp = empirical_velocity_law(psit);
    const double ks = ks_distance(emp, mu);
    const bool pass = ks <= 0.05 && std::abs(raw_mass - 1.0) <= 1e-6;
    report(10, "one-defect mixture law at t=2000", pass,
           "ks=" + fmt(ks) + " <= 0.05, mixture mass drift=" + fmt(std::abs(raw_mass - 1.0)) +
               " <= 1e-6");
}

void criterion_11_trace_norm() {
    const auto field = CoinField::power_decay(coins::hadamard(), 0.5, 1.0);
    const TraceNormDiagnostic d = trace_norm_partial(field, 10000);
    bool ok = true;
    double prev = 0.0;
    for (std::size_t i = 0; i < d.partial_sum.size(); ++i) {
        ok = ok && d.partial_sum[i] >= prev && d.partial_sum[i] <= d.bound[i];
        prev = d.partial_sum[i];
    }
    report(11, "trace-class partial sums within the decay bound (X<=1e4)", ok,
           "final sum=" + fmt(d.partial_sum.back()) + " <= bound=" + fmt(d.bound.back()));
}

}  // namespace

int main() {
    criterion_1_unitarity();
    criterion_2_two_step_law();
    criterion_3_updown_atoms();
    criterion_4_flip_moment();
    criterion_5_konno_limit();
    criterion_6_group_velocity();

    const BandDecomposition bands16k(coins::hadamard(), 1 << 14);
    criterion_7_pushforward(bands16k);

    const auto field = defect_field();
    const BoundStateSet bs =
        point_spectrum(build_truncated(field, 200, Boundary::reflecting), field);
    criterion_8_localization(bs);
    criterion_9_wave_cauchy();
    criterion_10_mixture(bands16k, bs);
    criterion_11_trace_norm();

    std::printf("%d/11 criteria passed\n", 11 - failures);
    return failures == 0 ? 0 : 1;
}
