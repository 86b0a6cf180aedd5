#include "qwalk/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "field_json.hpp"
#include "qwalk/errors.hpp"

namespace qwalk {

using nlohmann::json;

std::string fmt_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_state_csv(std::ostream& os, const WalkState& state) {
    os << "x,re0,im0,re1,im1\n";
    for (int x = state.x_min; x <= state.x_max(); ++x) {
        const Spinor a = state.at(x);
        os << x << ',' << fmt_g17(a(0).real()) << ',' << fmt_g17(a(0).imag()) << ','
           << fmt_g17(a(1).real()) << ',' << fmt_g17(a(1).imag()) << '\n';
    }
}

void write_state_csv(const std::string& path, const WalkState& state) {
    std::ofstream os(path);
    if (!os) throw ConfigError("cannot open " + path + " for writing");
    write_state_csv(os, state);
}

WalkState read_state_csv(std::istream& is) {
    WalkState st;
    std::string line;
    if (!std::getline(is, line)) throw ConfigError("state csv is empty");
    bool first = true;
    int expected = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tok;
        double vals[5];
        for (int i = 0; i < 5; ++i) {
            if (!std::getline(ls, tok, ',')) throw ConfigError("malformed state csv row");
            vals[i] = std::stod(tok);
        }
        const int x = static_cast<int>(vals[0]);
        if (first) {
            st.x_min = x;
            first = false;
        } else if (x != expected) {
            throw ConfigError("state csv sites must be contiguous");
        }
        expected = x + 1;
        st.amplitudes.emplace_back(Complex(vals[1], vals[2]), Complex(vals[3], vals[4]));
    }
    if (st.amplitudes.empty()) throw ConfigError("state csv has no rows");
    return st;
}

WalkState read_state_csv_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open " + path);
    return read_state_csv(is);
}

namespace {

json matrix_to_json(const Matrix2& m) {
    json a = json::array();
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            a.push_back(m(r, c).real());
            a.push_back(m(r, c).imag());
        }
    }
    return a;
}

Matrix2 matrix_from_json(const json& a) {
    if (!a.is_array() || a.size() != 8) {
        throw ConfigError("coin matrices serialize as 8 floats (row-major re/im)");
    }
    Matrix2 m;
    int i = 0;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            const double re = a.at(i++).get<double>();
            const double im = a.at(i++).get<double>();
            m(r, c) = Complex(re, im);
        }
    }
    return m;
}

}  // namespace

std::string field_to_json(const CoinField& field) {
    return detail::field_to_json_object(field).dump();
}

namespace detail {

json field_to_json_object(const CoinField& field) {
    json j;
    j["kind"] = field_kind_name(field.kind());
    j["C0"] = matrix_to_json(field.limit_coin());
    if (field.kind() == FieldKind::one_defect || field.kind() == FieldKind::finite_defects) {
        json defs = json::array();
        for (const auto& [x, m] : field.defects()) {
            defs.push_back({{"x", x}, {"matrix", matrix_to_json(m)}});
        }
        j["defects"] = defs;
    }
    if (field.kind() == FieldKind::power_decay) {
        j["c1"] = field.c1();
        j["eps"] = field.eps();
    }
    return j;
}

CoinField field_from_json_object(const json& j) {
    if (!j.contains("kind") || !j.contains("C0")) {
        throw ConfigError("coin field needs 'kind' and 'C0'");
    }
    const FieldKind kind = field_kind_from_name(j.at("kind").get<std::string>());
    const Matrix2 c0 = matrix_from_json(j.at("C0"));
    switch (kind) {
        case FieldKind::homogeneous:
            return CoinField::homogeneous(c0);
        case FieldKind::one_defect: {
            if (!j.contains("defects") || j.at("defects").size() != 1) {
                throw ConfigError("one_defect takes exactly one defect entry");
            }
            const json& d = j.at("defects").at(0);
            if (d.at("x").get<int>() != 0) {
                throw ConfigError("one_defect places its defect at x = 0");
            }
            return CoinField::one_defect(c0, matrix_from_json(d.at("matrix")));
        }
        case FieldKind::finite_defects: {
            std::map<int, Matrix2> defs;
            for (const json& d : j.value("defects", json::array())) {
                defs[d.at("x").get<int>()] = matrix_from_json(d.at("matrix"));
            }
            return CoinField::finite_defects(c0, std::move(defs));
        }
        case FieldKind::power_decay:
            if (!j.contains("c1") || !j.contains("eps")) {
                throw ConfigError("power_decay needs c1 and eps");
            }
            return CoinField::power_decay(c0, j.at("c1").get<double>(), j.at("eps").get<double>());
    }
    throw ConfigError("unreachable field kind");
}

}  // namespace detail

CoinField field_from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("field json parse error: ") + e.what());
    }
    return detail::field_from_json_object(j);
}

void write_distribution_csv(std::ostream& os, const PositionDistribution& dist) {
    os << "x,prob\n";
    for (int x = dist.x_min; x <= dist.x_max(); ++x) {
        os << x << ',' << fmt_g17(dist.at(x)) << '\n';
    }
}

void write_band_csv(std::ostream& os, const BandDecomposition& bands) {
    os << "k,re_l1,im_l1,v1,re_u1_0,im_u1_0,re_u1_1,im_u1_1,"
          "re_l2,im_l2,v2,re_u2_0,im_u2_0,re_u2_1,im_u2_1\n";
    for (const SymbolSample& s : bands.samples()) {
        os << fmt_g17(s.k);
        for (int j = 0; j < 2; ++j) {
            os << ',' << fmt_g17(s.lambda[j].real()) << ',' << fmt_g17(s.lambda[j].imag()) << ','
               << fmt_g17(s.velocity[j]);
            for (int c = 0; c < 2; ++c) {
                os << ',' << fmt_g17(s.vectors[j](c).real()) << ','
                   << fmt_g17(s.vectors[j](c).imag());
            }
        }
        os << '\n';
    }
}

void write_measure_csv(std::ostream& os, const VelocityMeasure& mu) {
    os << "type,v,weight\n";
    for (const auto& p : mu.atoms()) {
        os << "atom," << fmt_g17(p.v) << ',' << fmt_g17(p.weight) << '\n';
    }
    for (const auto& p : mu.samples()) {
        os << "sample," << fmt_g17(p.v) << ',' << fmt_g17(p.weight) << '\n';
    }
}

void write_probe_csv(std::ostream& os, const WaveProbe& probe) {
    os << "t,residual,norm\n";
    for (std::size_t i = 0; i < probe.times.size(); ++i) {
        os << probe.times[i] << ','
           << (i == 0 ? "nan" : fmt_g17(probe.residuals[i - 1])) << ','
           << fmt_g17(probe.norms[i]) << '\n';
    }
}

void write_tracenorm_csv(std::ostream& os, const TraceNormDiagnostic& diag) {
    os << "X,partial_sum,bound\n";
    for (std::size_t i = 0; i < diag.radii.size(); ++i) {
        os << diag.radii[i] << ',' << fmt_g17(diag.partial_sum[i]) << ','
           << (diag.has_bound ? fmt_g17(diag.bound[i]) : "nan") << '\n';
    }
}

void write_boundstates_json(const std::string& dir, const std::string& stem,
                            const BoundStateSet& bs) {
    namespace fs = std::filesystem;
    json listing = json::array();
    for (std::size_t i = 0; i < bs.states.size(); ++i) {
        const auto& st = bs.states[i];
        const std::string vec_name = stem + "_state_" + std::to_string(i) + ".csv";
        write_state_csv((fs::path(dir) / vec_name).string(),
                        bound_state_as_walk_state(st, bs.half_width));
        listing.push_back({{"theta", st.theta},
                           {"decay_rate", st.decay_rate},
                           {"edge_mass", st.edge_mass},
                           {"vector_csv_path", vec_name}});
    }
    std::ofstream os(fs::path(dir) / (stem + ".json"));
    if (!os) throw ConfigError("cannot write bound state listing");
    os << listing.dump(2) << '\n';
}

}  // namespace qwalk
