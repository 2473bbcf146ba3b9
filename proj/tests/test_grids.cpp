#include <doctest.h>

#include <cmath>
#include <complex>

#include "fuchs/grids.hpp"
#include "fuchs/random.hpp"

using namespace fuchs;

namespace {

const LevelParams kP311{3, 1, 1, 4};

// Oracle for the group law through exact p-adic arithmetic on canonical lifts.
XnElement xn_mul_oracle(const XnGrid& grid, const XnElement& g, const XnElement& h) {
    const PadicNumber a = grid.lift_unit(g), t = grid.lift_gamma(g);
    const PadicNumber b = grid.lift_unit(h), s = grid.lift_gamma(h);
    return grid.locate(a * b, invert(b) * t + s);
}

} // namespace

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(LevelParams({2, 1, 1, 4}).validate(), ConfigError);
    CHECK_THROWS_AS(LevelParams({15, 1, 1, 4}).validate(), ConfigError);
    CHECK_THROWS_AS(LevelParams({3, 0, 1, 4}).validate(), ConfigError);
    CHECK_THROWS_AS(LevelParams({3, 1, 0, 4}).validate(), ConfigError);
    CHECK_THROWS_AS(LevelParams({3, 1, 1, -1}).validate(), ConfigError);
    CHECK_NOTHROW(LevelParams({5, 2, 2, 4}).validate());
}

TEST_CASE("grid cardinalities: |Gamma_n| = |U_n| = p^m, |X_n| = p^{2m}") {
    for (const LevelParams P : {LevelParams{3, 1, 1, 4}, LevelParams{3, 1, 2, 4},
                                LevelParams{5, 1, 1, 4}, LevelParams{3, 2, 1, 4}}) {
        const std::int64_t pm = checked_pow(P.prime, P.resolution_m);
        CHECK(UnitGrid(P).size() == pm);
        CHECK(GammaGrid(P).size() == pm);
        CHECK(BallGrid(P).size() == pm);
        CHECK(XnGrid(P).size() == pm * pm);
    }
}

TEST_CASE("representatives and locate are inverse to each other") {
    const LevelParams P{3, 1, 2, 4};
    const UnitGrid ug(P);
    const GammaGrid gg(P);
    const BallGrid bg(P);
    for (std::int64_t i = 0; i < ug.size(); ++i) {
        CHECK(ug.locate(ug.representative(UnitClass{i})).index == i);
        CHECK(gg.locate(gg.representative(GammaClass{i})).index == i);
        CHECK(bg.locate(bg.representative(i)) == i);
    }
    // locate is constant on cells
    SeededRng rng(8101);
    for (int trial = 0; trial < 50; ++trial) {
        const std::int64_t i = rng.uniform_int(ug.size());
        const PadicNumber perturbed = ug.representative(UnitClass{i}) +
                                      rng.random_ball_element(P.prime, P.cell_exponent(), 8);
        CHECK(ug.locate(perturbed).index == i);
    }
    CHECK_THROWS_AS((void)ug.locate(PadicNumber::from_integer(3, 2, 8)), DomainError);
    CHECK_THROWS_AS((void)gg.locate(PadicNumber::from_rational(3, 1, 81, 8)), DomainError);
    CHECK_THROWS_AS((void)bg.locate(PadicNumber::from_integer(3, 1, 8)), DomainError);
}

TEST_CASE("group law example: (1,[1/9])(4,[0]) = (4,[1/9]) at p=3, n=1") {
    const XnGrid grid(kP311);
    // [1/9] has index 1 (representative 1/9); the unit 4 = 1 + 3 has index 1
    const XnElement g = grid.element(0, 1);
    const XnElement h = grid.element(1, 0);
    const XnElement prod = xn_mul(g, h);
    CHECK(prod.unit.index == 1);
    CHECK(prod.gamma.index == 1); // [4^{-1}/9] = [7/9] = [1/9] in Gamma_1
    CHECK(prod == xn_mul_oracle(grid, g, h));
}

TEST_CASE("inverse example: (4,[1/9])^{-1} = (7 mod U_2, [2/9])") {
    const XnGrid grid(kP311);
    const XnElement g = grid.element(1, 1);
    const XnElement inv = xn_inv(g);
    CHECK(inv.unit.index == 2);  // 4^{-1} ≡ 7 (mod 9)
    CHECK(inv.gamma.index == 2); // [-4/9] = [2/9]
    CHECK(xn_mul(g, inv) == xn_identity(kP311));
    CHECK(xn_mul(inv, g) == xn_identity(kP311));
}

TEST_CASE("group axioms exhaustively at m = 1") {
    const XnGrid grid(kP311);
    const XnElement e = xn_identity(kP311);
    for (std::int64_t i = 0; i < grid.size(); ++i) {
        const XnElement g = grid.at(i);
        CHECK(xn_mul(g, e) == g);
        CHECK(xn_mul(e, g) == g);
        CHECK(xn_mul(g, xn_inv(g)) == e);
        CHECK(xn_inv(xn_inv(g)) == g);
        for (std::int64_t j = 0; j < grid.size(); ++j)
            for (std::int64_t k = 0; k < grid.size(); ++k) {
                const XnElement a = grid.at(j), b = grid.at(k);
                CHECK(xn_mul(xn_mul(g, a), b) == xn_mul(g, xn_mul(a, b)));
            }
    }
}

TEST_CASE("integer group law agrees with the p-adic oracle") {
    for (const LevelParams P : {LevelParams{3, 1, 1, 4}, LevelParams{3, 2, 2, 4},
                                LevelParams{5, 1, 1, 4}, LevelParams{7, 1, 2, 4}}) {
        const XnGrid grid(P);
        SeededRng rng(8102);
        for (int trial = 0; trial < 60; ++trial) {
            const XnElement g = rng.random_xn_element(P);
            const XnElement h = rng.random_xn_element(P);
            CHECK(xn_mul(g, h) == xn_mul_oracle(grid, g, h));
            const XnElement gi = xn_inv(g);
            CHECK(xn_mul(g, gi) == xn_identity(P));
        }
    }
}

TEST_CASE("parameter mismatch is rejected") {
    const XnElement a{LevelParams{3, 1, 1, 4}, UnitClass{0}, GammaClass{0}};
    const XnElement b{LevelParams{3, 1, 2, 4}, UnitClass{0}, GammaClass{0}};
    CHECK_THROWS_AS((void)xn_mul(a, b), ParameterMismatchError);
}

TEST_CASE("haar integral: volumes") {
    const LevelParams P{3, 1, 1, 4};
    LcFunction ones = make_zero_function(Space{SpaceKind::Unit, P});
    ones.values.setOnes();
    CHECK(std::abs(haar_integral(ones) - std::complex<double>(1.0 / 3.0, 0)) < 1e-15);

    LcFunction cell = make_zero_function(Space{SpaceKind::Unit, P});
    cell.values[1] = 1.0;
    CHECK(std::abs(haar_integral(cell) - std::complex<double>(1.0 / 9.0, 0)) < 1e-15);
}

TEST_CASE("substitution formulas are exact finite sums") {
    for (const LevelParams P : {LevelParams{3, 1, 1, 4}, LevelParams{3, 1, 2, 4},
                                LevelParams{5, 1, 1, 4}}) {
        const UnitGrid ug(P);
        const BallGrid bg(P);
        SeededRng rng(8103);
        for (int trial = 0; trial < 20; ++trial) {
            const LcFunction f = rng.random_function(Space{SpaceKind::Unit, P});
            CHECK(std::abs(haar_integral(pullback_square(ug, f)) - haar_integral(f)) < 1e-14);
            const LcFunction h = rng.random_function(Space{SpaceKind::Ball, P});
            CHECK(std::abs(haar_integral(pullback_phi(ug, bg, h)) - haar_integral(h)) < 1e-14);
        }
    }
}

TEST_CASE("gamma Fourier matrix is the DFT of Z/p^m") {
    const LevelParams P{3, 1, 2, 4};
    const Eigen::MatrixXcd G = gamma_character_matrix(P);
    const std::int64_t pm = P.pow_m();
    for (std::int64_t c = 0; c < pm; ++c)
        for (std::int64_t j = 0; j < pm; ++j) {
            const std::complex<double> w =
                std::polar(1.0, 2.0 * M_PI * static_cast<double>((c * j) % pm) /
                                    static_cast<double>(pm));
            CHECK(std::abs(G(c, j) - w) < 1e-15);
        }
}

TEST_CASE("fourier_gamma: delta and constant functions") {
    const LevelParams P{3, 1, 1, 4};
    LcFunction delta = make_zero_function(Space{SpaceKind::Gamma, P});
    delta.values[0] = 1.0; // the class [0]
    const LcFunction hat = fourier_gamma(delta);
    for (Eigen::Index c = 0; c < hat.values.size(); ++c)
        CHECK(std::abs(hat.values[c] - std::complex<double>(1, 0)) < 1e-15);

    LcFunction ones = make_zero_function(Space{SpaceKind::Gamma, P});
    ones.values.setOnes();
    const LcFunction mass = fourier_gamma(ones);
    CHECK(std::abs(mass.values[0] - std::complex<double>(3, 0)) < 1e-14);
    CHECK(std::abs(mass.values[1]) < 1e-14);
    CHECK(std::abs(mass.values[2]) < 1e-14);

    const LcFunction wrong_space = make_zero_function(Space{SpaceKind::Unit, P});
    CHECK_THROWS_AS((void)fourier_gamma(wrong_space), ParameterMismatchError);
}

TEST_CASE("fourier round trip and Plancherel") {
    for (const LevelParams P : {LevelParams{3, 1, 1, 4}, LevelParams{3, 1, 2, 4},
                                LevelParams{5, 1, 1, 4}, LevelParams{3, 2, 1, 4}}) {
        SeededRng rng(8104);
        const double pn = std::pow(static_cast<double>(P.prime), P.level_n);
        for (int trial = 0; trial < 100; ++trial) {
            const LcFunction f = rng.random_function(Space{SpaceKind::Gamma, P});
            const LcFunction hat = fourier_gamma(f);
            const LcFunction back = fourier_gamma_inv(hat);
            CHECK((back.values - f.values).cwiseAbs().maxCoeff() < 1e-12);
            // ∫ |F f|^2 dx = p^{-n} Σ |f|^2
            CHECK(std::abs(std::real(inner_product(hat, hat)) - f.values.squaredNorm() / pn) <
                  1e-12);
        }
        // constant 1 on the ball inverts to the delta at [0]
        LcFunction ones = make_zero_function(Space{SpaceKind::Ball, P});
        ones.values.setOnes();
        const LcFunction back = fourier_gamma_inv(ones);
        CHECK(std::abs(back.values[0] - std::complex<double>(1, 0)) < 1e-13);
        for (Eigen::Index j = 1; j < back.values.size(); ++j) CHECK(std::abs(back.values[j]) < 1e-13);
    }
}

TEST_CASE("scaled gamma Fourier transform is unitary") {
    for (const LevelParams P : {LevelParams{3, 1, 1, 4}, LevelParams{3, 1, 2, 4},
                                LevelParams{5, 1, 1, 4}, LevelParams{3, 2, 1, 4}}) {
        const Eigen::MatrixXcd G = gamma_character_matrix(P);
        const double scale = std::pow(static_cast<double>(P.prime), P.level_n) * P.cell_weight();
        const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(G.rows(), G.cols());
        CHECK((scale * (G.adjoint() * G) - id).norm() / id.norm() < 1e-13);
    }
}

TEST_CASE("left translation permutes the grid and preserves the inner product") {
    const LevelParams P{3, 1, 2, 4};
    const XnGrid grid(P);
    SeededRng rng(8105);
    for (int trial = 0; trial < 30; ++trial) {
        const XnElement g = rng.random_xn_element(P);
        const LcFunction f = rng.random_function(Space{SpaceKind::Xn, P});
        const LcFunction h = rng.random_function(Space{SpaceKind::Xn, P});
        const LcFunction tf = left_translate(grid, g, f);
        const LcFunction th = left_translate(grid, g, h);
        CHECK(std::abs(inner_product(tf, th) - inner_product(f, h)) < 1e-14);
        // translating by the canonical lift gives the same permutation
        const LcFunction tf2 = left_translate(grid, grid.lift_unit(g), grid.lift_gamma(g), f);
        CHECK((tf.values - tf2.values).cwiseAbs().maxCoeff() == 0.0);
        // group action: translate by g then g^{-1} is the identity
        const LcFunction back = left_translate(grid, xn_inv(g), tf);
        CHECK((back.values - f.values).cwiseAbs().maxCoeff() == 0.0);
    }
}
