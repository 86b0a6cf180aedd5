#pragma once

#include <iosfwd>
#include <string>

#include "qwalk/band.hpp"
#include "qwalk/experiment.hpp"
#include "qwalk/measure.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/walk.hpp"
#include "qwalk/wave.hpp"

namespace qwalk {

/// Shortest 17-significant-digit decimal form; round-trips doubles exactly.
std::string fmt_g17(double x);

// State snapshots: columns x, re0, im0, re1, im1.
void write_state_csv(std::ostream& os, const WalkState& state);
void write_state_csv(const std::string& path, const WalkState& state);
WalkState read_state_csv(std::istream& is);
WalkState read_state_csv_file(const std::string& path);

// Coin fields: {kind, C0, defects: [{x, matrix}], c1, eps}; matrices are
// 8 floats row-major, re/im interleaved.
std::string field_to_json(const CoinField& field);
CoinField field_from_json(const std::string& json_text);

void write_distribution_csv(std::ostream& os, const PositionDistribution& dist);

// Bands: k, per-band eigenvalue, velocity and vector components.
void write_band_csv(std::ostream& os, const BandDecomposition& bands);

// Measures: type(atom|sample), v, weight.
void write_measure_csv(std::ostream& os, const VelocityMeasure& mu);

// Probes: t, residual, norm (residual is nan on the first row).
void write_probe_csv(std::ostream& os, const WaveProbe& probe);

// Trace diagnostics: X, partial_sum, bound.
void write_tracenorm_csv(std::ostream& os, const TraceNormDiagnostic& diag);

// Bound states: [{theta, decay_rate, edge_mass, vector_csv_path}]; each
// eigenvector goes to its own CSV next to the listing.
void write_boundstates_json(const std::string& dir, const std::string& stem,
                            const BoundStateSet& bs);

}  // namespace qwalk
