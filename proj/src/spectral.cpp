#include "qwalk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qwalk/errors.hpp"

namespace qwalk {

const char* boundary_name(Boundary b) {
    return b == Boundary::reflecting ? "reflecting" : "periodic";
}

Boundary boundary_from_name(const std::string& name) {
    if (name == "reflecting") return Boundary::reflecting;
    if (name == "periodic") return Boundary::periodic;
    throw ConfigError("unknown boundary rule: " + name);
}

TruncatedEvolution build_truncated(const CoinField& field, int half_width, Boundary boundary) {
    if (half_width < 2) {
        throw ConfigError("truncation half-width must be at least 2");
    }
    const int L = half_width;
    const int n = 2 * (2 * L + 1);
    TruncatedEvolution t;
    t.half_width = L;
    t.boundary = boundary;
    t.field_hash = field.hash();
    t.matrix = Eigen::MatrixXcd::Zero(n, n);

    auto idx = [L](int x, int s) { return 2 * (x + L) + s; };
    for (int x = -L; x <= L; ++x) {
        const Matrix2 c = field.coin(x);
        // coined amplitude chi(x) = C(x) psi(x); the upper part moves to x-1,
        // the lower to x+1; at the edges the boundary rule reroutes it
        int row_up, row_dn;
        if (x == -L) {
            row_up = boundary == Boundary::periodic ? idx(L, 0) : idx(-L, 1);
        } else {
            row_up = idx(x - 1, 0);
        }
        if (x == L) {
            row_dn = boundary == Boundary::periodic ? idx(-L, 1) : idx(L, 0);
        } else {
            row_dn = idx(x + 1, 1);
        }
        for (int s = 0; s < 2; ++s) {
            t.matrix(row_up, idx(x, s)) += c(0, s);
            t.matrix(row_dn, idx(x, s)) += c(1, s);
        }
    }

    const double uerr =
        (t.matrix.adjoint() * t.matrix - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
    if (uerr > 1e-10) {
        throw FilterError("boundary rule broke unitarity of the truncated evolution");
    }
    return t;
}

UnitaryEigensystem unitary_eigensystem(const Eigen::MatrixXcd& u) {
    // For unitary U the Hermitian halves B = (U+U*)/2 and A = (U-U*)/2i
    // commute with U; joint diagonalization yields orthonormal eigenvectors
    // even through the cos-theta pairing degeneracies of B.
    const auto n = u.rows();
    const Eigen::MatrixXcd b = 0.5 * (u + u.adjoint());
    const Eigen::MatrixXcd a = Complex(0.0, -0.5) * (u - u.adjoint());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(b);
    if (es.info() != Eigen::Success) {
        throw FilterError("Hermitian eigensolver failed");
    }
    Eigen::VectorXd w = es.eigenvalues();
    Eigen::MatrixXcd v = es.eigenvectors();
    const Eigen::MatrixXcd av = a * v;

    UnitaryEigensystem out;
    out.eigenvalues.resize(n);
    out.vectors.resize(n, n);

    const double cluster_tol = 1e-9;
    Eigen::Index i = 0;
    while (i < n) {
        Eigen::Index j = i;
        while (j + 1 < n && w(j + 1) - w(j) < cluster_tol) ++j;
        const Eigen::Index s = j - i + 1;
        if (s == 1) {
            const double aa = v.col(i).dot(av.col(i)).real();
            const Complex lam(w(i), aa);
            out.eigenvalues(i) = lam / std::abs(lam);
            out.vectors.col(i) = v.col(i);
        } else {
            // split the cluster by the A-component
            Eigen::MatrixXcd sm = v.middleCols(i, s).adjoint() * av.middleCols(i, s);
            sm = 0.5 * (sm + sm.adjoint()).eval();
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> sub(sm);
            const Eigen::MatrixXcd rot = sub.eigenvectors();
            out.vectors.middleCols(i, s) = v.middleCols(i, s) * rot;
            for (Eigen::Index t = 0; t < s; ++t) {
                double bb = 0.0;  // Rayleigh quotient of B for the rotated vector
                for (Eigen::Index r = 0; r < s; ++r) {
                    bb += std::norm(rot(r, t)) * w(i + r);
                }
                const Complex lam(bb, sub.eigenvalues()(t));
                out.eigenvalues(i + t) = lam / std::abs(lam);
            }
        }
        i = j + 1;
    }
    return out;
}

namespace {

double phase_in_2pi(Complex z) {
    double a = std::arg(z);
    if (a < 0.0) a += 2.0 * M_PI;
    return a;
}

double circular_distance(double a, double b) {
    double d = std::abs(a - b);
    return std::min(d, 2.0 * M_PI - d);
}

double edge_mass_of(const Eigen::VectorXcd& vec, int half_width) {
    double s = 0.0;
    const int n2 = static_cast<int>(vec.size()) / 2;
    for (int i = 0; i < n2; ++i) {
        const int x = i - half_width;
        if (2 * std::abs(x) > half_width) {
            s += std::norm(vec(2 * i)) + std::norm(vec(2 * i + 1));
        }
    }
    return s;
}

struct Localized {
    double theta;
    Eigen::VectorXcd vector;
    double edge_mass;
};

std::vector<Localized> localized_states(const Eigen::MatrixXcd& matrix, int half_width) {
    UnitaryEigensystem eig = unitary_eigensystem(matrix);
    std::vector<Localized> out;
    for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
        const double em = edge_mass_of(eig.vectors.col(i), half_width);
        if (em <= 1e-8) {
            out.push_back({phase_in_2pi(eig.eigenvalues(i)), eig.vectors.col(i), em});
        }
    }
    return out;
}

void fit_decay(const Eigen::VectorXcd& vec, int half_width, double& kappa, double& r2) {
    // least squares of log ||eta(x)|| against -|x| on 10 < |x|, above the
    // eigensolver noise floor
    std::vector<double> xs, ys;
    for (int x = -half_width; x <= half_width; ++x) {
        if (std::abs(x) <= 10) continue;
        const int i = x + half_width;
        const double a = std::sqrt(std::norm(vec(2 * i)) + std::norm(vec(2 * i + 1)));
        if (a < 1e-12) continue;
        xs.push_back(std::abs(static_cast<double>(x)));
        ys.push_back(std::log(a));
    }
    if (xs.size() < 8) {
        kappa = std::numeric_limits<double>::infinity();
        r2 = 1.0;
        return;
    }
    const double n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double inter = (sy - slope * sx) / n;
    kappa = -slope;
    double ss_res = 0.0, ss_tot = 0.0;
    const double mean = sy / n;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double fit = inter + slope * xs[i];
        ss_res += (ys[i] - fit) * (ys[i] - fit);
        ss_tot += (ys[i] - mean) * (ys[i] - mean);
    }
    r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
}

}  // namespace

BoundStateSet point_spectrum(const TruncatedEvolution& trunc, const CoinField& field) {
    if (trunc.field_hash != field.hash()) {
        throw ConfigError("truncated evolution was built from a different field");
    }
    BoundStateSet bs;
    bs.half_width = trunc.half_width;
    bs.field_hash = trunc.field_hash;

    std::vector<Localized> cands = localized_states(trunc.matrix, trunc.half_width);
    if (cands.empty()) return bs;

    // stability filters: the eigenphase must survive doubling the window and
    // swapping the boundary rule
    const Boundary other =
        trunc.boundary == Boundary::periodic ? Boundary::reflecting : Boundary::periodic;
    const TruncatedEvolution doubled = build_truncated(field, 2 * trunc.half_width, trunc.boundary);
    const TruncatedEvolution swapped = build_truncated(field, trunc.half_width, other);
    std::vector<double> ref_double, ref_swap;
    for (const auto& l : localized_states(doubled.matrix, doubled.half_width)) {
        ref_double.push_back(l.theta);
    }
    for (const auto& l : localized_states(swapped.matrix, swapped.half_width)) {
        ref_swap.push_back(l.theta);
    }
    auto reproduced = [](double theta, const std::vector<double>& refs) {
        for (double r : refs) {
            if (circular_distance(theta, r) <= 1e-8) return true;
        }
        return false;
    };

    std::vector<Localized> accepted;
    for (auto& c : cands) {
        if (reproduced(c.theta, ref_double) && reproduced(c.theta, ref_swap)) {
            accepted.push_back(std::move(c));
        }
    }
    std::sort(accepted.begin(), accepted.end(),
              [](const Localized& a, const Localized& b) { return a.theta < b.theta; });

    // orthonormalize within numerically degenerate phase clusters
    for (std::size_t i = 0; i < accepted.size(); ++i) {
        for (std::size_t j = i; j > 0 && accepted[i].theta - accepted[j - 1].theta < 1e-10; --j) {
            const Complex ov = accepted[j - 1].vector.dot(accepted[i].vector);
            accepted[i].vector -= ov * accepted[j - 1].vector;
        }
        accepted[i].vector.normalize();
    }

    for (auto& a : accepted) {
        BoundState st;
        st.theta = a.theta;
        st.vector = std::move(a.vector);
        st.edge_mass = edge_mass_of(st.vector, trunc.half_width);
        fit_decay(st.vector, trunc.half_width, st.decay_rate, st.decay_r2);
        bs.states.push_back(std::move(st));
    }
    return bs;
}

double point_mass_weight(const BoundStateSet& bs, const WalkState& psi0) {
    if (std::abs(psi0.norm() - 1.0) > 1e-6) {
        throw ConfigError("point mass weight needs a normalized state");
    }
    if (bs.empty()) return 0.0;
    const int L = bs.half_width;
    if (psi0.x_min < -L || psi0.x_max() > L) {
        throw ConfigError("initial state lies outside the truncation window");
    }
    double w = 0.0;
    for (const auto& st : bs.states) {
        Complex ov{0.0, 0.0};
        for (int x = psi0.x_min; x <= psi0.x_max(); ++x) {
            const int i = x + L;
            const Spinor amp = psi0.at(x);
            ov += std::conj(st.vector(2 * i)) * amp(0) + std::conj(st.vector(2 * i + 1)) * amp(1);
        }
        w += std::norm(ov);
    }
    return w;
}

WalkState bound_state_as_walk_state(const BoundState& state, int half_width) {
    WalkState st;
    st.x_min = -half_width;
    st.amplitudes.resize(2 * half_width + 1);
    for (int i = 0; i <= 2 * half_width; ++i) {
        st.amplitudes[i] = Spinor(state.vector(2 * i), state.vector(2 * i + 1));
    }
    return st;
}

}  // namespace qwalk
