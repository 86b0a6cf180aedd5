#include <cmath>

#include "doctest.h"
#include "qwalk/coin.hpp"
#include "qwalk/errors.hpp"
#include "support.hpp"

using namespace qwalk;

TEST_SUITE("coin") {

TEST_CASE("standard coins are unitary") {
    CHECK(is_unitary(coins::hadamard()));
    CHECK(is_unitary(coins::identity()));
    CHECK(is_unitary(coins::flip()));
    CHECK(is_unitary(coins::updown()));
    CHECK(is_unitary(coins::rotation(0.37)));
}

TEST_CASE("non-unitary matrices are rejected") {
    Matrix2 m;
    m << 1.0, 0.0, 0.0, 2.0;
    CHECK_THROWS_AS(CoinMatrix{m}, ConfigError);
    CHECK_THROWS_AS(CoinField::homogeneous(m), ConfigError);
    CHECK_THROWS_AS(CoinField::one_defect(coins::hadamard(), m), ConfigError);
}

TEST_CASE("hop blocks partition the coin") {
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 20; ++trial) {
        const CoinMatrix c(testsupport::random_unitary(gen));
        const Matrix2 sum = c.left_hop() + c.right_hop();
        CHECK((sum - c.matrix()).cwiseAbs().maxCoeff() == 0.0);
        CHECK(c.left_hop().row(1).cwiseAbs().maxCoeff() == 0.0);
        CHECK(c.right_hop().row(0).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("one_defect assignment") {
    const auto field = CoinField::one_defect(coins::hadamard(), coins::identity());
    CHECK((field.coin(0) - coins::identity()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((field.coin(5) - coins::hadamard()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((field.coin(-3) - coins::hadamard()).cwiseAbs().maxCoeff() == 0.0);
    CHECK_FALSE(field.is_trivial());
}

TEST_CASE("homogeneous assignment") {
    const auto field = CoinField::homogeneous(coins::hadamard());
    for (int x : {-100, -1, 0, 1, 100}) {
        CHECK((field.coin(x) - coins::hadamard()).cwiseAbs().maxCoeff() == 0.0);
    }
    CHECK(field.is_trivial());
}

TEST_CASE("one_defect with the limit coin is trivial") {
    const auto field = CoinField::one_defect(coins::hadamard(), coins::hadamard());
    CHECK(field.is_trivial());
}

TEST_CASE("power_decay default rule satisfies the decay bound") {
    const double c1 = 0.5, eps = 1.0;
    const auto field = CoinField::power_decay(coins::hadamard(), c1, eps);
    for (int x : {1, 2, 3, 5, 17, 100, -3, -42}) {
        const double diff = operator_norm(field.coin(x) - coins::hadamard());
        CHECK(diff <= c1 * std::pow(std::abs(x), -1.0 - eps));
        CHECK(is_unitary(field.coin(x)));
    }
    // spot value: ||C(3) - C0|| <= 0.5 * 3^-2
    CHECK(operator_norm(field.coin(3) - coins::hadamard()) <= 0.5 / 9.0);
}

TEST_CASE("power_decay rejects bad parameters") {
    CHECK_THROWS_AS(CoinField::power_decay(coins::hadamard(), 0.0, 1.0), ConfigError);
    CHECK_THROWS_AS(CoinField::power_decay(coins::hadamard(), 0.5, 0.0), ConfigError);
    CHECK_THROWS_AS(CoinField::power_decay(coins::hadamard(), -1.0, 1.0), ConfigError);
}

TEST_CASE("custom power_decay rule is validated at construction") {
    auto make_bad = [] {
        return CoinField::power_decay(coins::hadamard(), 0.5, 1.0, [](int) {
            Matrix2 m;
            m << 2.0, 0.0, 0.0, 1.0;
            return m;
        });
    };
    CHECK_THROWS_AS(make_bad(), ConfigError);
}

TEST_CASE("field hash separates assignments") {
    const auto a = CoinField::homogeneous(coins::hadamard());
    const auto b = CoinField::one_defect(coins::hadamard(), coins::identity());
    const auto c = CoinField::one_defect(coins::hadamard(), coins::flip());
    CHECK(a.hash() != b.hash());
    CHECK(b.hash() != c.hash());
    const auto b2 = CoinField::one_defect(coins::hadamard(), coins::identity());
    CHECK(b.hash() == b2.hash());
}

TEST_CASE("closed-form singular values match the svd oracle") {
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 50; ++trial) {
        Matrix2 m;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) m(r, c) = testsupport::random_complex(gen);
        const auto sv = singular_values(m);
        const Eigen::JacobiSVD<Matrix2> svd(m);
        CHECK(sv[0] == doctest::Approx(svd.singularValues()(0)).epsilon(1e-12));
        CHECK(sv[1] == doctest::Approx(svd.singularValues()(1)).epsilon(1e-12));
        CHECK(sv[0] * sv[1] == doctest::Approx(std::abs(m.determinant())).epsilon(1e-10));
        CHECK(sv[0] >= sv[1]);
        CHECK(sv[1] >= 0.0);
    }
}

}  // TEST_SUITE
