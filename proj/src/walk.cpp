#include "qwalk/walk.hpp"

#include <cmath>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

bool exactly_zero(const Spinor& s) {
    return s(0) == Complex(0.0, 0.0) && s(1) == Complex(0.0, 0.0);
}

// Drop exactly-zero amplitudes at the window edges; the support stays exact.
void trim(WalkState& st) {
    std::size_t lo = 0;
    while (lo + 1 < st.amplitudes.size() && exactly_zero(st.amplitudes[lo])) ++lo;
    std::size_t hi = st.amplitudes.size();
    while (hi > lo + 1 && exactly_zero(st.amplitudes[hi - 1])) --hi;
    if (lo > 0 || hi < st.amplitudes.size()) {
        std::vector<Spinor> kept(st.amplitudes.begin() + lo, st.amplitudes.begin() + hi);
        st.amplitudes = std::move(kept);
        st.x_min += static_cast<int>(lo);
    }
}

}  // namespace

Spinor WalkState::at(int x) const {
    if (x < x_min || x > x_max()) return Spinor::Zero();
    return amplitudes[x - x_min];
}

double WalkState::squared_norm() const {
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a(0)) + std::norm(a(1));
    return s;
}

double WalkState::norm() const { return std::sqrt(squared_norm()); }

WalkState delta_state(int site, const Spinor& spinor) {
    WalkState st;
    st.x_min = site;
    st.amplitudes = {spinor};
    st.time = 0;
    return st;
}

WalkState gaussian_packet(int center, double sigma, double k0, const Spinor& spinor) {
    if (!(sigma > 0.0)) {
        throw ConfigError("packet width must be positive");
    }
    const int half = static_cast<int>(std::ceil(8.0 * sigma));
    WalkState st;
    st.x_min = center - half;
    st.amplitudes.resize(2 * half + 1);
    for (int i = 0; i <= 2 * half; ++i) {
        const double x = st.x_min + i;
        const double env = std::exp(-(x - center) * (x - center) / (4.0 * sigma * sigma));
        st.amplitudes[i] = env * std::exp(Complex(0.0, k0 * x)) * spinor;
    }
    const double n = st.norm();
    if (n == 0.0) {
        throw ConfigError("packet spinor must be nonzero");
    }
    for (auto& a : st.amplitudes) a /= n;
    return st;
}

WalkState step_forward(const WalkState& state, const CoinField& field) {
    const int n = state.window_size();
    WalkState out;
    out.x_min = state.x_min - 1;
    out.time = state.time + 1;
    out.amplitudes.assign(n + 2, Spinor::Zero());
    for (int i = 0; i < n; ++i) {
        const Spinor chi = field.coin(state.x_min + i) * state.amplitudes[i];
        out.amplitudes[i](0) += chi(0);      // to x - 1
        out.amplitudes[i + 2](1) += chi(1);  // to x + 1
    }
    trim(out);
    return out;
}

WalkState step_backward(const WalkState& state, const CoinField& field) {
    const int n = state.window_size();
    WalkState out;
    out.x_min = state.x_min - 1;
    out.time = state.time - 1;
    out.amplitudes.assign(n + 2, Spinor::Zero());
    // inverse shift: component 0 comes from x-1, component 1 from x+1
    for (int i = 0; i < n; ++i) {
        out.amplitudes[i + 2](0) = state.amplitudes[i](0);
        out.amplitudes[i](1) = state.amplitudes[i](1);
    }
    for (int i = 0; i < n + 2; ++i) {
        out.amplitudes[i] = field.coin(out.x_min + i).adjoint() * out.amplitudes[i];
    }
    trim(out);
    return out;
}

WalkState evolve(const WalkState& state, const CoinField& field, int n, Direction dir) {
    if (n < 0) {
        throw ConfigError("step count must be nonnegative");
    }
    WalkState st = state;
    for (int i = 0; i < n; ++i) {
        st = dir == Direction::forward ? step_forward(st, field) : step_backward(st, field);
    }
    return st;
}

double PositionDistribution::at(int x) const {
    if (x < x_min || x > x_max()) return 0.0;
    return prob[x - x_min];
}

double PositionDistribution::total() const {
    double s = 0.0;
    for (double p : prob) s += p;
    return s;
}

double PositionDistribution::moment(int m) const {
    double s = 0.0;
    for (std::size_t i = 0; i < prob.size(); ++i) {
        s += prob[i] * std::pow(static_cast<double>(x_min + static_cast<int>(i)), m);
    }
    return s;
}

PositionDistribution position_distribution(const WalkState& state) {
    if (std::abs(state.norm() - 1.0) > 1e-6) {
        throw ConfigError("position distribution needs a normalized state");
    }
    PositionDistribution d;
    d.x_min = state.x_min;
    d.prob.resize(state.amplitudes.size());
    for (std::size_t i = 0; i < state.amplitudes.size(); ++i) {
        d.prob[i] = std::norm(state.amplitudes[i](0)) + std::norm(state.amplitudes[i](1));
    }
    return d;
}

double state_distance(const WalkState& a, const WalkState& b) {
    const int lo = std::min(a.x_min, b.x_min);
    const int hi = std::max(a.x_max(), b.x_max());
    double s = 0.0;
    for (int x = lo; x <= hi; ++x) {
        s += (a.at(x) - b.at(x)).squaredNorm();
    }
    return std::sqrt(s);
}

Complex inner_product(const WalkState& a, const WalkState& b) {
    const int lo = std::max(a.x_min, b.x_min);
    const int hi = std::min(a.x_max(), b.x_max());
    Complex s{0.0, 0.0};
    for (int x = lo; x <= hi; ++x) {
        s += a.at(x).dot(b.at(x));
    }
    return s;
}

}  // namespace qwalk
