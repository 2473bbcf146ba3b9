#include <doctest.h>

#include <cmath>
#include <complex>

#include "fuchs/operators.hpp"
#include "fuchs/random.hpp"

using namespace fuchs;

namespace {

const LevelParams kP311{3, 1, 1, 4};

bool is_phase_permutation(const Eigen::MatrixXcd& m) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        int nonzero = 0;
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            const double a = std::abs(m(r, c));
            if (a > 1e-14) {
                ++nonzero;
                if (std::abs(a - 1.0) > 1e-14) return false;
            }
        }
        if (nonzero != 1) return false;
    }
    return true;
}

} // namespace

TEST_CASE("rep_pi at the identity and at phase-free points") {
    const UnitGrid ug(kP311);
    const int N = kP311.working_precision();
    const PadicNumber one = PadicNumber::from_integer(3, 1, N);
    const PadicNumber zero = PadicNumber::zero(3, N);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(3, 3);
    CHECK((rep_pi(ug, GnPoint{one, zero}).matrix() - id).norm() == 0.0);

    // pi(a, 0) is the permutation a0 -> a^{-1} a0 with no phases
    const PadicNumber a = ug.representative(UnitClass{1});
    const Eigen::MatrixXcd perm = rep_pi(ug, GnPoint{a, zero}).matrix();
    CHECK(is_phase_permutation(perm));
    for (std::int64_t c = 0; c < 3; ++c) {
        const std::int64_t r = ug.locate(a * ug.representative(UnitClass{c})).index;
        CHECK(std::abs(perm(r, c) - std::complex<double>(1, 0)) == 0.0);
    }
}

TEST_CASE("rep_pi is unitary and a homomorphism on representable points") {
    SeededRng rng(9001);
    for (const LevelParams P : {LevelParams{3, 1, 1, 4}, LevelParams{3, 1, 2, 4},
                                LevelParams{5, 1, 1, 4}, LevelParams{3, 2, 1, 4}}) {
        const UnitGrid ug(P);
        const int N = P.working_precision();
        const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(ug.size(), ug.size());
        for (int trial = 0; trial < 50; ++trial) {
            const GnPoint g{rng.random_principal_unit(P.prime, P.level_n, N),
                            rng.random_ball_element(P.prime, -P.cell_exponent(), N)};
            const GnPoint h{rng.random_principal_unit(P.prime, P.level_n, N),
                            rng.random_ball_element(P.prime, -P.cell_exponent(), N)};
            const OperatorMatrix pg = rep_pi(ug, g), ph = rep_pi(ug, h);
            CHECK((pg.matrix().adjoint() * pg.matrix() - id).norm() < 1e-12);
            const GnPoint gh{g.a * h.a, invert(h.a) * g.t + h.t};
            CHECK(((pg * ph).matrix() - rep_pi(ug, gh).matrix()).norm() < 1e-12);
        }
    }
}

TEST_CASE("rep_pi rejects overly singular translation parts") {
    const UnitGrid ug(kP311);
    const int N = kP311.working_precision();
    const GnPoint bad{PadicNumber::from_integer(3, 1, N),
                      PadicNumber::from_rational(3, 1, 27, N)}; // |t| = 27 > p^{n+m} = 9
    CHECK_THROWS_AS((void)rep_pi(ug, bad), DomainError);
}

TEST_CASE("the symmetry: omega at the identity, involution, trace") {
    const XnGrid grid(kP311);
    const OperatorMatrix sigma = symmetry_operator(grid.unit_grid());
    CHECK((omega_point(grid, xn_identity(kP311)).matrix() - sigma.matrix()).norm() == 0.0);
    const Eigen::MatrixXcd s = sigma.matrix();
    CHECK((s * s - Eigen::MatrixXcd::Identity(3, 3)).norm() == 0.0);
    CHECK((s - s.adjoint()).norm() == 0.0);
    // a0 -> a0^{-1} fixes exactly the identity cell when p is odd
    CHECK(std::abs(s.trace() - std::complex<double>(1, 0)) == 0.0);
}

TEST_CASE("omega: conjugate of the symmetry, lift independence, involution") {
    SeededRng rng(9002);
    for (const LevelParams P : {LevelParams{3, 1, 1, 4}, LevelParams{3, 1, 2, 4},
                                LevelParams{5, 1, 1, 4}}) {
        const XnGrid grid(P);
        const OperatorMatrix sigma = symmetry_operator(grid.unit_grid());
        const Eigen::MatrixXcd id =
            Eigen::MatrixXcd::Identity(grid.unit_grid().size(), grid.unit_grid().size());
        const int N = P.working_precision();
        for (std::int64_t i = 0; i < grid.size(); ++i) {
            const XnElement g = grid.at(i);
            const Eigen::MatrixXcd omega = omega_point(grid, g).matrix();
            CHECK(is_phase_permutation(omega));
            CHECK((omega * omega - id).norm() < 1e-13);        // Ω² = 1
            CHECK((omega - omega.adjoint()).norm() < 1e-13);   // self-adjoint
            // canonical lift
            const OperatorMatrix pi =
                rep_pi(grid.unit_grid(), GnPoint{grid.lift_unit(g), grid.lift_gamma(g)});
            CHECK(((pi * sigma * pi.adjoint()).matrix() - omega).norm() < 1e-13);
            // a lift shifted inside H_n gives the same point operator
            const PadicNumber shifted =
                grid.lift_gamma(g) + rng.random_ball_element(P.prime, -P.level_n, N);
            const OperatorMatrix pi2 = rep_pi(grid.unit_grid(), GnPoint{grid.lift_unit(g), shifted});
            CHECK(((pi2 * sigma * pi2.adjoint()).matrix() - omega).norm() < 1e-13);
        }
    }
}

TEST_CASE("quantize: delta functions hit the point operators") {
    const XnGrid grid(kP311);
    LcFunction delta = make_zero_function(Space{SpaceKind::Xn, kP311});
    delta.values[grid.flat(xn_identity(kP311))] = 1.0;
    // 𝛀(delta at e) = q^n * cell * Σ = 3 * (1/9) * Σ
    const Eigen::MatrixXcd lhs = quantize(grid, delta).matrix();
    const Eigen::MatrixXcd rhs = (1.0 / 3.0) * symmetry_operator(grid.unit_grid()).matrix();
    CHECK((lhs - rhs).norm() < 1e-15);
    // and dequantize inverts it
    const LcFunction back = dequantize(grid, quantize(grid, delta));
    CHECK((back.values - delta.values).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("quantization is an isometry onto the weighted Hilbert-Schmidt space") {
    SeededRng rng(9003);
    for (const LevelParams P : {LevelParams{3, 1, 1, 4}, LevelParams{5, 1, 1, 4},
                                LevelParams{3, 2, 1, 4}}) {
        const XnGrid grid(P);
        const Space xn{SpaceKind::Xn, P};
        const double qn = std::pow(static_cast<double>(P.prime), P.level_n);
        for (int trial = 0; trial < 50; ++trial) {
            const LcFunction f = rng.random_function(xn);
            const LcFunction g = rng.random_function(xn);
            const OperatorMatrix qf = quantize(grid, f), qg = quantize(grid, g);
            CHECK(std::abs(hs_inner_product(qf, qg) - inner_product(f, g)) < 1e-12);
            // the plain trace pairing differs from the L² pairing exactly by
            // the formal degree q^n
            const std::complex<double> plain =
                (qf.matrix().adjoint() * qg.matrix()).trace();
            CHECK(std::abs(plain - qn * inner_product(f, g)) < 1e-11);
        }
    }
}

TEST_CASE("dequantize is linear and inverts quantize") {
    const LevelParams P{3, 1, 2, 4};
    const XnGrid grid(P);
    SeededRng rng(9004);
    const Space xn{SpaceKind::Xn, P};
    for (int trial = 0; trial < 10; ++trial) {
        const LcFunction f = rng.random_function(xn);
        const LcFunction g = rng.random_function(xn);
        const OperatorMatrix a = quantize(grid, f), b = quantize(grid, g);
        CHECK((dequantize(grid, a).values - f.values).cwiseAbs().maxCoeff() < 1e-13);
        const std::complex<double> alpha = rng.gaussian_complex(), beta = rng.gaussian_complex();
        const LcFunction lin = dequantize(grid, alpha * a + beta * b);
        const Eigen::VectorXcd expect = alpha * f.values + beta * g.values;
        CHECK((lin.values - expect).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("covariance: pi conjugation matches left translation") {
    SeededRng rng(9005);
    for (const LevelParams P : {LevelParams{3, 1, 1, 4}, LevelParams{5, 1, 1, 4}}) {
        const XnGrid grid(P);
        const LcFunction f = rng.random_function(Space{SpaceKind::Xn, P});
        const OperatorMatrix qf = quantize(grid, f);
        for (std::int64_t i = 0; i < grid.size(); ++i) {
            const XnElement g = grid.at(i);
            const OperatorMatrix pi =
                rep_pi(grid.unit_grid(), GnPoint{grid.lift_unit(g), grid.lift_gamma(g)});
            const Eigen::MatrixXcd lhs = (pi * qf * pi.adjoint()).matrix();
            const Eigen::MatrixXcd rhs = quantize(grid, left_translate(grid, g, f)).matrix();
            CHECK((lhs - rhs).norm() < 1e-12);
        }
    }
}

TEST_CASE("star kernel: frozen values and symmetries") {
    const XnGrid grid(kP311);
    const XnElement e = xn_identity(kP311);
    CHECK(std::abs(star_kernel(grid, e, e, e) - std::complex<double>(9, 0)) == 0.0); // q^{2n}

    SeededRng rng(9006);
    const double q2n = 9.0;
    for (int trial = 0; trial < 100; ++trial) {
        const XnElement g0 = rng.random_xn_element(kP311);
        const XnElement g1 = rng.random_xn_element(kP311);
        const XnElement g2 = rng.random_xn_element(kP311);
        const std::complex<double> k = star_kernel(grid, g0, g1, g2);
        CHECK(std::abs(std::abs(k) - q2n) < 1e-14); // |K| = q^{2n}

        // specialization K([e],[g1],[g2]) = q^{2n} Psi(-phi(a1) t2 + phi(a2) t1)
        const Phase ph = (-psi_phase(phi(grid.lift_unit(g1)) * grid.lift_gamma(g2))) +
                         psi_phase(phi(grid.lift_unit(g2)) * grid.lift_gamma(g1));
        CHECK(std::abs(star_kernel(grid, e, g1, g2) - q2n * phase_to_complex(ph)) < 1e-14);

        // invariance under the diagonal action
        const XnElement h = rng.random_xn_element(kP311);
        CHECK(std::abs(star_kernel(grid, xn_mul(h, g0), xn_mul(h, g1), xn_mul(h, g2)) - k) <
              1e-14);
    }
}

TEST_CASE("star product: the kernel route matches a brute-force kernel sum") {
    const XnGrid grid(kP311);
    SeededRng rng(9007);
    const Space xn{SpaceKind::Xn, kP311};
    const double w2 = grid.cell_weight() * grid.cell_weight();
    for (int trial = 0; trial < 5; ++trial) {
        const LcFunction f1 = rng.random_function(xn);
        const LcFunction f2 = rng.random_function(xn);
        const LcFunction fast = star_product(grid, f1, f2, StarMethod::Kernel);
        LcFunction slow = make_zero_function(xn);
        for (std::int64_t i = 0; i < grid.size(); ++i) {
            std::complex<double> acc = 0;
            for (std::int64_t j = 0; j < grid.size(); ++j)
                for (std::int64_t k = 0; k < grid.size(); ++k)
                    acc += star_kernel(grid, grid.at(i), grid.at(j), grid.at(k)) * f1.values[j] *
                           f2.values[k];
            slow.values[i] = w2 * acc;
        }
        CHECK((fast.values - slow.values).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("star product: kernel and operator routes agree") {
    SeededRng rng(9008);
    for (const LevelParams P : {LevelParams{3, 1, 1, 4}, LevelParams{5, 1, 1, 4},
                                LevelParams{3, 2, 1, 4}}) {
        const XnGrid grid(P);
        const Space xn{SpaceKind::Xn, P};
        for (int trial = 0; trial < 20; ++trial) {
            const LcFunction f1 = rng.random_function(xn);
            const LcFunction f2 = rng.random_function(xn);
            const LcFunction a = star_product(grid, f1, f2, StarMethod::Kernel);
            const LcFunction b = star_product(grid, f1, f2, StarMethod::HilbertSchmidt);
            CHECK((a.values - b.values).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("star product is associative and left equivariant") {
    const XnGrid grid(kP311);
    SeededRng rng(9009);
    const Space xn{SpaceKind::Xn, kP311};
    for (int trial = 0; trial < 20; ++trial) {
        const LcFunction f1 = rng.random_function(xn);
        const LcFunction f2 = rng.random_function(xn);
        const LcFunction f3 = rng.random_function(xn);
        const LcFunction l =
            star_product(grid, star_product(grid, f1, f2, StarMethod::Kernel), f3,
                         StarMethod::Kernel);
        const LcFunction r = star_product(
            grid, f1, star_product(grid, f2, f3, StarMethod::Kernel), StarMethod::Kernel);
        CHECK((l.values - r.values).cwiseAbs().maxCoeff() < 1e-10);

        const XnElement g = rng.random_xn_element(kP311);
        const LcFunction lhs =
            left_translate(grid, g, star_product(grid, f1, f2, StarMethod::Kernel));
        const LcFunction rhs = star_product(grid, left_translate(grid, g, f1),
                                            left_translate(grid, g, f2), StarMethod::Kernel);
        CHECK((lhs.values - rhs.values).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("operator algebra: shape checks and adjoints") {
    const LevelParams P{3, 1, 1, 4};
    const LevelParams Q{3, 1, 2, 4};
    const XnGrid gp(P);
    SeededRng rng(9010);
    const LcFunction f = rng.random_function(Space{SpaceKind::Xn, P});
    const OperatorMatrix a = quantize(gp, f);
    CHECK_THROWS_AS((void)(a * OperatorMatrix::identity(Space{SpaceKind::Unit, Q})),
                    ParameterMismatchError);
    CHECK((a.adjoint().matrix() - a.matrix().adjoint()).norm() == 0.0);
    const LcFunction g = rng.random_function(Space{SpaceKind::Xn, Q});
    CHECK_THROWS_AS((void)quantize(gp, g), ParameterMismatchError);
    CHECK_THROWS_AS((void)star_product(gp, f, g, StarMethod::Kernel), ParameterMismatchError);
}

TEST_CASE("hilbert-schmidt pairing matches the apply-based L2 pairing") {
    // <A, B>_HS equals Σ_i <A e_i, B e_i> over an orthonormal basis, weighted
    // by q^{-n}: check against OperatorMatrix::apply on indicator functions.
    const LevelParams P{3, 1, 1, 4};
    const XnGrid grid(P);
    SeededRng rng(9011);
    const OperatorMatrix a = quantize(grid, rng.random_function(Space{SpaceKind::Xn, P}));
    const OperatorMatrix b = quantize(grid, rng.random_function(Space{SpaceKind::Xn, P}));
    std::complex<double> acc = 0;
    const Space unit{SpaceKind::Unit, P};
    for (std::int64_t i = 0; i < unit.dim(); ++i) {
        LcFunction e = make_zero_function(unit);
        e.values[i] = 1.0 / std::sqrt(unit.cell_weight()); // normalized indicator
        acc += inner_product(a.apply(e), b.apply(e));
    }
    CHECK(std::abs(acc / 3.0 - hs_inner_product(a, b)) < 1e-13);
}
