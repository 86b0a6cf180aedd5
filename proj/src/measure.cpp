#include "qwalk/measure.hpp"

#include <algorithm>
#include <cmath>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

void sort_points(std::vector<WeightedPoint>& pts) {
    std::stable_sort(pts.begin(), pts.end(),
                     [](const WeightedPoint& a, const WeightedPoint& b) { return a.v < b.v; });
}

double cumulative_at(const std::vector<WeightedPoint>& pts, const std::vector<double>& cum,
                     double v) {
    // right-continuous: include every point with location <= v
    auto it = std::upper_bound(pts.begin(), pts.end(), v,
                               [](double x, const WeightedPoint& p) { return x < p.v; });
    const auto idx = static_cast<std::size_t>(it - pts.begin());
    return idx == 0 ? 0.0 : cum[idx - 1];
}

}  // namespace

VelocityMeasure::VelocityMeasure(std::vector<WeightedPoint> atoms,
                                 std::vector<WeightedPoint> samples)
    : atoms_(std::move(atoms)), samples_(std::move(samples)) {
    for (const auto& p : atoms_) {
        if (p.weight < 0.0) throw ConfigError("measure weights must be nonnegative");
    }
    for (const auto& p : samples_) {
        if (p.weight < 0.0) throw ConfigError("measure weights must be nonnegative");
    }
    sort_points(atoms_);
    sort_points(samples_);
    rebuild();
    raw_cloud_mass_ = sample_cum_.empty() ? 0.0 : sample_cum_.back();
}

void VelocityMeasure::rebuild() {
    atom_cum_.resize(atoms_.size());
    double s = 0.0;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        s += atoms_[i].weight;
        atom_cum_[i] = s;
    }
    sample_cum_.resize(samples_.size());
    double t = 0.0;
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        t += samples_[i].weight;
        sample_cum_[i] = t;
    }
    total_mass_ = s + t;
}

double VelocityMeasure::atom_mass() const { return atom_cum_.empty() ? 0.0 : atom_cum_.back(); }

double VelocityMeasure::cdf(double v) const {
    return cumulative_at(atoms_, atom_cum_, v) + cumulative_at(samples_, sample_cum_, v);
}

double VelocityMeasure::mean() const {
    double s = 0.0;
    for (const auto& p : atoms_) s += p.weight * p.v;
    for (const auto& p : samples_) s += p.weight * p.v;
    return s;
}

double VelocityMeasure::second_moment() const {
    double s = 0.0;
    for (const auto& p : atoms_) s += p.weight * p.v * p.v;
    for (const auto& p : samples_) s += p.weight * p.v * p.v;
    return s;
}

Complex VelocityMeasure::characteristic(double xi) const {
    if (xi == 0.0) return {total_mass_, 0.0};  // exp(i 0 v) integrates to the mass
    Complex s{0.0, 0.0};
    for (const auto& p : atoms_) s += p.weight * std::exp(Complex(0.0, xi * p.v));
    for (const auto& p : samples_) s += p.weight * std::exp(Complex(0.0, xi * p.v));
    return s;
}

void VelocityMeasure::rescale_cloud(double target) {
    const double current = sample_cum_.empty() ? 0.0 : sample_cum_.back();
    if (current <= 0.0) {
        if (target > 0.0) throw FilterError("cannot rescale an empty cloud to positive mass");
        return;
    }
    const double f = target / current;
    for (auto& p : samples_) p.weight *= f;
    rebuild();
}

double measure_cdf(const VelocityMeasure& mu, double v) { return mu.cdf(v); }

VelocityMeasure velocity_pushforward(const WalkState& psi0, const BandDecomposition& bands) {
    if (std::abs(psi0.norm() - 1.0) > 1e-6) {
        throw ConfigError("pushforward needs a normalized state");
    }
    if (bands.degenerate() && !bands.resolvable()) {
        throw FilterError("band decomposition has an unresolvable crossing");
    }
    const int n = bands.grid_size();
    if (psi0.window_size() > n) {
        throw ConfigError("state window exceeds the momentum grid (aliasing)");
    }

    std::vector<WeightedPoint> points;
    points.reserve(2 * static_cast<std::size_t>(n));
    const int w = psi0.window_size();
    for (const SymbolSample& s : bands.samples()) {
        // psi_hat(k) = sum_x e^{-ikx} psi(x), phases stepped incrementally
        const Complex step = std::exp(Complex(0.0, -s.k));
        Complex phase = std::exp(Complex(0.0, -s.k * psi0.x_min));
        Spinor hat = Spinor::Zero();
        for (int i = 0; i < w; ++i) {
            hat += phase * psi0.amplitudes[i];
            phase *= step;
        }
        for (int j = 0; j < 2; ++j) {
            const double weight = std::norm(s.vectors[j].dot(hat)) / n;
            if (weight > 0.0) {
                points.push_back({s.velocity[j], weight});
            }
        }
    }

    // collapse onto atoms when the cloud concentrates on a few exact speeds
    sort_points(points);
    std::vector<WeightedPoint> merged;
    for (const auto& p : points) {
        if (!merged.empty() && p.v - merged.back().v <= 1e-12) {
            merged.back().weight += p.weight;
        } else {
            merged.push_back(p);
        }
    }
    if (merged.size() <= 8) {
        return VelocityMeasure(std::move(merged), {});
    }
    return VelocityMeasure({}, std::move(points));
}

}  // namespace qwalk
