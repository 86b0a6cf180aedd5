#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qwalk/band.hpp"
#include "qwalk/coin.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/experiment.hpp"
#include "qwalk/io.hpp"
#include "qwalk/konno.hpp"
#include "qwalk/measure.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/walk.hpp"
#include "qwalk/wave.hpp"

namespace py = pybind11;
using namespace qwalk;

namespace {

Eigen::MatrixX2cd amplitudes_matrix(const WalkState& st) {
    Eigen::MatrixX2cd m(st.amplitudes.size(), 2);
    for (std::size_t i = 0; i < st.amplitudes.size(); ++i) {
        m(static_cast<Eigen::Index>(i), 0) = st.amplitudes[i](0);
        m(static_cast<Eigen::Index>(i), 1) = st.amplitudes[i](1);
    }
    return m;
}

WalkState make_state(int x_min, const Eigen::MatrixX2cd& amps, std::int64_t time) {
    WalkState st;
    st.x_min = x_min;
    st.time = time;
    st.amplitudes.resize(amps.rows());
    for (Eigen::Index i = 0; i < amps.rows(); ++i) {
        st.amplitudes[i] = Spinor(amps(i, 0), amps(i, 1));
    }
    return st;
}

Eigen::MatrixX2d points_matrix(const std::vector<WeightedPoint>& pts) {
    Eigen::MatrixX2d m(pts.size(), 2);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        m(static_cast<Eigen::Index>(i), 0) = pts[i].v;
        m(static_cast<Eigen::Index>(i), 1) = pts[i].weight;
    }
    return m;
}

}  // namespace

PYBIND11_MODULE(_qwalk, m) {
    m.doc() = "Position-dependent coined quantum walks on Z: exact evolution, band "
              "structure, limit velocity measures, wave-operator probes and bound states.";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<FilterError>(m, "FilterError", PyExc_RuntimeError);

    // --- coins and fields ---
    m.def("hadamard_coin", &coins::hadamard);
    m.def("identity_coin", &coins::identity);
    m.def("flip_coin", &coins::flip);
    m.def("updown_coin", &coins::updown);
    m.def("rotation_coin", &coins::rotation, py::arg("theta"));
    m.def("is_unitary", &is_unitary, py::arg("m"), py::arg("tol") = 1e-12);
    m.def("operator_norm", &operator_norm);
    m.def("singular_values", &singular_values);

    py::class_<CoinField>(m, "CoinField")
        .def_static("homogeneous", &CoinField::homogeneous, py::arg("c0"))
        .def_static("one_defect", &CoinField::one_defect, py::arg("c0"), py::arg("defect"))
        .def_static("finite_defects", &CoinField::finite_defects, py::arg("c0"),
                    py::arg("defects"))
        .def_static("power_decay",
                    py::overload_cast<const Matrix2&, double, double>(&CoinField::power_decay),
                    py::arg("c0"), py::arg("c1"), py::arg("eps"))
        .def("coin", &CoinField::coin, py::arg("x"))
        .def_property_readonly("limit_coin", &CoinField::limit_coin)
        .def_property_readonly("kind", [](const CoinField& f) {
            return std::string(field_kind_name(f.kind()));
        })
        .def_property_readonly("is_trivial", &CoinField::is_trivial)
        .def_property_readonly("hash", &CoinField::hash)
        .def("to_json", [](const CoinField& f) { return field_to_json(f); })
        .def_static("from_json", [](const std::string& s) { return field_from_json(s); });

    // --- states and evolution ---
    py::class_<WalkState>(m, "WalkState")
        .def(py::init(&make_state), py::arg("x_min"), py::arg("amplitudes"), py::arg("time") = 0)
        .def_readonly("x_min", &WalkState::x_min)
        .def_readonly("time", &WalkState::time)
        .def_property_readonly("x_max", &WalkState::x_max)
        .def_property_readonly("amplitudes", &amplitudes_matrix)
        .def("norm", &WalkState::norm)
        .def("squared_norm", &WalkState::squared_norm);

    m.def("delta_state", &delta_state, py::arg("site"), py::arg("spinor"));
    m.def("gaussian_packet", &gaussian_packet, py::arg("center"), py::arg("sigma"), py::arg("k0"),
          py::arg("spinor"));
    m.def("step_forward", &step_forward);
    m.def("step_backward", &step_backward);
    m.def(
        "evolve",
        [](const WalkState& st, const CoinField& f, int n, const std::string& direction) {
            const Direction d = direction == "backward" ? Direction::backward : Direction::forward;
            return evolve(st, f, n, d);
        },
        py::arg("state"), py::arg("field"), py::arg("n"), py::arg("direction") = "forward");
    m.def("state_distance", &state_distance);
    m.def("inner_product", &inner_product);

    py::class_<PositionDistribution>(m, "PositionDistribution")
        .def_readonly("x_min", &PositionDistribution::x_min)
        .def_property_readonly("x_max", &PositionDistribution::x_max)
        .def_readonly("prob", &PositionDistribution::prob)
        .def("at", &PositionDistribution::at, py::arg("x"))
        .def("total", &PositionDistribution::total)
        .def("moment", &PositionDistribution::moment, py::arg("m"));
    m.def("position_distribution", &position_distribution);

    // --- momentum analysis ---
    m.def("symbol", &symbol, py::arg("k"), py::arg("c0"));
    py::class_<EigenPair2>(m, "EigenPair2")
        .def_property_readonly("lambdas",
                               [](const EigenPair2& e) { return e.lambda; })
        .def_property_readonly("vectors", [](const EigenPair2& e) { return e.vectors; })
        .def_readonly("degenerate", &EigenPair2::degenerate)
        .def_readonly("diagonal", &EigenPair2::diagonal);
    m.def("eigendecompose_symbol", &eigendecompose_symbol, py::arg("m"),
          py::arg("gap_threshold") = 1e-8);

    py::class_<BandDecomposition>(m, "BandDecomposition")
        .def(py::init<const Matrix2&, int>(), py::arg("c0"), py::arg("grid_size"))
        .def_property_readonly("grid_size", &BandDecomposition::grid_size)
        .def_property_readonly("min_gap", &BandDecomposition::min_gap)
        .def_property_readonly("degenerate", &BandDecomposition::degenerate)
        .def_property_readonly("resolvable", &BandDecomposition::resolvable)
        .def_property_readonly("k",
                               [](const BandDecomposition& b) {
                                   Eigen::VectorXd k(b.grid_size());
                                   for (int i = 0; i < b.grid_size(); ++i)
                                       k(i) = b.samples()[i].k;
                                   return k;
                               })
        .def_property_readonly("lambdas",
                               [](const BandDecomposition& b) {
                                   Eigen::MatrixX2cd l(b.grid_size(), 2);
                                   for (int i = 0; i < b.grid_size(); ++i)
                                       for (int j = 0; j < 2; ++j)
                                           l(i, j) = b.samples()[i].lambda[j];
                                   return l;
                               })
        .def_property_readonly("velocities", [](const BandDecomposition& b) {
            Eigen::MatrixX2d v(b.grid_size(), 2);
            for (int i = 0; i < b.grid_size(); ++i)
                for (int j = 0; j < 2; ++j) v(i, j) = b.samples()[i].velocity[j];
            return v;
        });

    // --- limit densities and measures ---
    m.def("konno_density", &konno_density, py::arg("v"), py::arg("r"));
    m.def("spinor_weight", &spinor_weight, py::arg("alpha"), py::arg("beta"));
    m.def("hadamard_limit_density", &hadamard_limit_density, py::arg("v"), py::arg("alpha"),
          py::arg("beta"));

    py::class_<VelocityMeasure>(m, "VelocityMeasure")
        .def_property_readonly("atoms",
                               [](const VelocityMeasure& mu) { return points_matrix(mu.atoms()); })
        .def_property_readonly(
            "samples", [](const VelocityMeasure& mu) { return points_matrix(mu.samples()); })
        .def("cdf", &VelocityMeasure::cdf, py::arg("v"))
        .def("mean", &VelocityMeasure::mean)
        .def("second_moment", &VelocityMeasure::second_moment)
        .def("characteristic", &VelocityMeasure::characteristic, py::arg("xi"))
        .def_property_readonly("total_mass", &VelocityMeasure::total_mass)
        .def_property_readonly("atom_mass", &VelocityMeasure::atom_mass)
        .def_property_readonly("raw_cloud_mass", &VelocityMeasure::raw_cloud_mass);
    m.def("measure_cdf", &measure_cdf, py::arg("mu"), py::arg("v"));
    m.def("velocity_pushforward", &velocity_pushforward, py::arg("psi0"), py::arg("bands"));

    // --- scattering ---
    m.def("wave_forward", &wave_forward, py::arg("psi"), py::arg("field"), py::arg("t"));
    m.def("wave_backward", &wave_backward, py::arg("psi"), py::arg("field"), py::arg("t"));

    py::class_<WaveProbe>(m, "WaveProbe")
        .def_readonly("times", &WaveProbe::times)
        .def_readonly("norms", &WaveProbe::norms)
        .def_readonly("residuals", &WaveProbe::residuals);
    m.def(
        "probe_wave",
        [](const WalkState& psi, const CoinField& f, std::vector<int> times,
           const std::string& direction) {
            const WaveDirection d =
                direction == "backward" ? WaveDirection::backward : WaveDirection::forward;
            return probe_wave(psi, f, std::move(times), d);
        },
        py::arg("psi"), py::arg("field"), py::arg("times"), py::arg("direction") = "forward");
    m.def("default_probe_times", &default_probe_times);

    py::class_<TraceNormDiagnostic>(m, "TraceNormDiagnostic")
        .def_readonly("radii", &TraceNormDiagnostic::radii)
        .def_readonly("partial_sum", &TraceNormDiagnostic::partial_sum)
        .def_readonly("bound", &TraceNormDiagnostic::bound)
        .def_readonly("has_bound", &TraceNormDiagnostic::has_bound)
        .def_readonly("defect_term", &TraceNormDiagnostic::defect_term);
    m.def("trace_norm_partial", &trace_norm_partial, py::arg("field"), py::arg("max_radius"));

    m.def("perturbed_velocity_measure", &perturbed_velocity_measure, py::arg("psi0"),
          py::arg("field"), py::arg("bands"), py::arg("bound_states"), py::arg("t"));

    // --- spectral ---
    py::enum_<Boundary>(m, "Boundary")
        .value("reflecting", Boundary::reflecting)
        .value("periodic", Boundary::periodic);

    py::class_<TruncatedEvolution>(m, "TruncatedEvolution")
        .def_readonly("half_width", &TruncatedEvolution::half_width)
        .def_readonly("boundary", &TruncatedEvolution::boundary)
        .def_readonly("matrix", &TruncatedEvolution::matrix)
        .def_property_readonly("dimension", &TruncatedEvolution::dimension);
    m.def("build_truncated", &build_truncated, py::arg("field"), py::arg("half_width"),
          py::arg("boundary") = Boundary::reflecting);

    m.def("unitary_eigensystem", [](const Eigen::MatrixXcd& u) {
        UnitaryEigensystem e = unitary_eigensystem(u);
        return py::make_tuple(e.eigenvalues, e.vectors);
    });

    py::class_<BoundState>(m, "BoundState")
        .def_readonly("theta", &BoundState::theta)
        .def_readonly("vector", &BoundState::vector)
        .def_readonly("edge_mass", &BoundState::edge_mass)
        .def_readonly("decay_rate", &BoundState::decay_rate)
        .def_readonly("decay_r2", &BoundState::decay_r2);

    py::class_<BoundStateSet>(m, "BoundStateSet")
        .def_readonly("half_width", &BoundStateSet::half_width)
        .def_readonly("states", &BoundStateSet::states)
        .def("__len__", [](const BoundStateSet& b) { return b.size(); })
        .def_property_readonly("thetas", [](const BoundStateSet& b) {
            std::vector<double> t;
            for (const auto& s : b.states) t.push_back(s.theta);
            return t;
        });
    m.def("point_spectrum", &point_spectrum, py::arg("trunc"), py::arg("field"));
    m.def("point_mass_weight", &point_mass_weight, py::arg("bound_states"), py::arg("psi0"));
    m.def("bound_state_as_walk_state", &bound_state_as_walk_state, py::arg("state"),
          py::arg("half_width"));

    // --- experiment harness ---
    m.def("empirical_velocity_law", &empirical_velocity_law, py::arg("state"));
    m.def("ks_distance", &ks_distance, py::arg("empirical"), py::arg("reference"));
}
