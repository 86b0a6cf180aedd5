#pragma once

#include <vector>

#include "qwalk/band.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

struct WeightedPoint {
    double v = 0.0;
    double weight = 0.0;
};

/// Probability measure on [-1, 1]: named atoms plus a weighted sample cloud
/// for the absolutely continuous part. Both parts are kept sorted by
/// location; the CDF is right-continuous.
class VelocityMeasure {
public:
    VelocityMeasure() = default;
    VelocityMeasure(std::vector<WeightedPoint> atoms, std::vector<WeightedPoint> samples);

    const std::vector<WeightedPoint>& atoms() const { return atoms_; }
    const std::vector<WeightedPoint>& samples() const { return samples_; }

    double total_mass() const { return total_mass_; }
    double atom_mass() const;
    double cdf(double v) const;
    double mean() const;
    double second_moment() const;
    Complex characteristic(double xi) const;

    /// Cloud mass before any renormalization; equals total cloud mass for
    /// measures that were never rescaled.
    double raw_cloud_mass() const { return raw_cloud_mass_; }

    /// Rescale the sample cloud so its mass becomes target.
    void rescale_cloud(double target);

private:
    std::vector<WeightedPoint> atoms_;
    std::vector<WeightedPoint> samples_;
    std::vector<double> atom_cum_;
    std::vector<double> sample_cum_;
    double total_mass_ = 0.0;
    double raw_cloud_mass_ = 0.0;

    void rebuild();
};

double measure_cdf(const VelocityMeasure& mu, double v);

/// Law of the asymptotic velocity for the homogeneous walk: Fourier weights
/// |<u_j(k), psi0_hat(k)>|^2 dk/2pi pushed forward through k -> v_j(k).
/// Clouds that collapse onto a handful of velocity values are returned as
/// atoms. Throws FilterError when the bands have an unresolvable crossing,
/// ConfigError when psi0 is not normalized.
VelocityMeasure velocity_pushforward(const WalkState& psi0, const BandDecomposition& bands);

}  // namespace qwalk
