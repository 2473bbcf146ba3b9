#include "fuchs/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>

#include "fuchs/cocycle.hpp"
#include "fuchs/operators.hpp"
#include "fuchs/random.hpp"

namespace fuchs {

namespace {

constexpr double kTightTolerance = 1e-12; // identities exact up to fp accumulation

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

struct CheckOutcome {
    double residual = 0.0;
    std::map<std::string, std::int64_t> grid_sizes;
    std::string note;
};

struct CheckDef {
    std::string suite;
    std::string name;
    double tolerance;
    std::function<CheckOutcome(SeededRng&)> body;
};

double max_abs(const Eigen::VectorXcd& v) { return v.cwiseAbs().maxCoeff(); }

std::map<std::string, std::int64_t> base_sizes(const LevelParams& P) {
    const std::int64_t pm = P.pow_m();
    return {{"unit", pm}, {"gamma", pm}, {"xn", pm * pm}};
}

// Riemann sum of f over the ball p^{-(n+m)} Z_p at cell scale p^{-(n+m)},
// where f is the p^{-n} Z_p-periodization of a Gamma_n-grid function. Exact
// because the periodization is constant on the fine cells; accumulated in
// extended precision so the fp error stays flat in the cell count.
std::complex<double> fine_ball_integral(const GammaGrid& gamma, const LcFunction& f_tilde,
                                        const PadicNumber* character_point) {
    const LevelParams& P = gamma.params();
    const int M = P.cell_exponent();
    const std::int64_t cells = checked_pow(P.prime, 2 * M);
    const std::int64_t pM = checked_pow(P.prime, M);
    const double weight = P.cell_weight(); // fine cells have volume p^{-M}
    const int N = P.working_precision() + 2 * M; // room for digits up to p^{M}
    std::complex<long double> acc = 0.0;
    for (std::int64_t j = 0; j < cells; ++j) {
        const PadicNumber center = PadicNumber::from_rational(P.prime, j, pM, N);
        std::complex<double> v = f_tilde.values[gamma.locate(center).index];
        if (character_point != nullptr)
            v *= phase_to_complex(psi_phase(*character_point * center));
        acc += std::complex<long double>(v);
    }
    return weight * std::complex<double>(static_cast<double>(acc.real()),
                                         static_cast<double>(acc.imag()));
}

// ---------------------------------------------------------------------------
// Check bodies. Each returns the residual that the report records; exact
// checks return the fraction of failed trials (0 on success).

CheckOutcome check_substitution_square(const RunConfig& cfg, SeededRng& rng) {
    const LevelParams P = cfg.level();
    const UnitGrid grid(P);
    double residual = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const LcFunction f = rng.random_function(Space{SpaceKind::Unit, P});
        const auto lhs = haar_integral(pullback_square(grid, f));
        const auto rhs = haar_integral(f);
        residual = std::max(residual, std::abs(lhs - rhs));
    }
    return {residual, base_sizes(P), {}};
}

CheckOutcome check_substitution_phi(const RunConfig& cfg, SeededRng& rng) {
    const LevelParams P = cfg.level();
    const UnitGrid ugrid(P);
    const BallGrid bgrid(P);
    double residual = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const LcFunction h = rng.random_function(Space{SpaceKind::Ball, P});
        const auto lhs = haar_integral(pullback_phi(ugrid, bgrid, h));
        const auto rhs = haar_integral(h);
        residual = std::max(residual, std::abs(lhs - rhs));
    }
    return {residual, base_sizes(P), {}};
}

CheckOutcome check_plancherel_roundtrip(const RunConfig& cfg, SeededRng& rng) {
    const LevelParams P = cfg.level();
    double residual = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const LcFunction f = rng.random_function(Space{SpaceKind::Gamma, P});
        const LcFunction back = fourier_gamma_inv(fourier_gamma(f));
        residual = std::max(residual, max_abs(back.values - f.values));
    }
    return {residual, base_sizes(P), {}};
}

CheckOutcome check_plancherel_scaling(const RunConfig& cfg, SeededRng& rng) {
    const LevelParams P = cfg.level();
    const double pn = static_cast<double>(checked_pow(P.prime, P.level_n));
    double residual = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const LcFunction f = rng.random_function(Space{SpaceKind::Gamma, P});
        const LcFunction hat = fourier_gamma(f);
        const double lhs = std::real(inner_product(hat, hat));
        const double rhs = f.values.squaredNorm() / pn;
        residual = std::max(residual, std::abs(lhs - rhs));
    }
    return {residual, base_sizes(P), {}};
}

CheckOutcome check_plancherel_counting_bridge(const RunConfig& cfg, SeededRng& rng) {
    const LevelParams P = cfg.level();
    const GammaGrid gamma(P);
    const double qn = static_cast<double>(checked_pow(P.prime, P.level_n));
    double residual = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        const LcFunction f = rng.random_function(Space{SpaceKind::Gamma, P});
        const std::complex<double> counting_sum = f.values.sum();
        const std::complex<double> integral = fine_ball_integral(gamma, f, nullptr);
        residual = std::max(residual, std::abs(counting_sum - integral / qn));
    }
    return {residual, base_sizes(P), {}};
}

CheckOutcome check_plancherel_field_fourier(const RunConfig& cfg, SeededRng& rng) {
    const LevelParams P = cfg.level();
    const GammaGrid gamma(P);
    const BallGrid ball(P);
    const double qn = static_cast<double>(checked_pow(P.prime, P.level_n));
    const int N = P.working_precision() + 2 * P.cell_exponent();
    double residual = 0.0;
    for (int trial = 0; trial < 3; ++trial) {
        const LcFunction f = rng.random_function(Space{SpaceKind::Gamma, P});
        const LcFunction hat = fourier_gamma(f);
        // On p^n Z_p the field transform is q^n times the Gamma_n transform.
        for (std::int64_t c = 0; c < ball.size(); ++c) {
            const std::complex<double> lhs =
                fine_ball_integral(gamma, f, &ball.representative(c));
            residual = std::max(residual, std::abs(lhs - qn * hat.values[c]));
        }
        // Outside p^n Z_p the field transform of a p^{-n}-invariant function vanishes.
        const std::int64_t pn1 = checked_pow(P.prime, P.level_n - 1);
        for (std::int64_t c = 1; c < P.prime; ++c) {
            const PadicNumber x = PadicNumber::from_integer(P.prime, pn1 * c, N);
            residual = std::max(residual, std::abs(fine_ball_integral(gamma, f, &x)));
        }
    }
    return {residual, base_sizes(P), {}};
}

CheckOutcome check_plancherel_unitary_scaled(const RunConfig& cfg, SeededRng&) {
    const LevelParams P = cfg.level();
    const Eigen::MatrixXcd G = gamma_character_matrix(P);
    const double scale = static_cast<double>(checked_pow(P.prime, P.level_n)) * P.cell_weight();
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(G.rows(), G.cols());
    const double residual = (scale * (G.adjoint() * G) - id).norm() / id.norm();
    return {residual, base_sizes(P), {}};
}

CheckOutcome check_plancherel_representative_independence(const RunConfig& cfg, SeededRng& rng) {
    const LevelParams P = cfg.level();
    const GammaGrid gamma(P);
    const BallGrid ball(P);
    const int N = P.working_precision();
    double residual = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const LcFunction f = rng.random_function(Space{SpaceKind::Gamma, P});
        const LcFunction hat = fourier_gamma(f);
        // Re-evaluate the character sum with shifted class representatives.
        for (std::int64_t c = 0; c < ball.size(); ++c) {
            std::complex<double> acc = 0.0;
            for (std::int64_t j = 0; j < gamma.size(); ++j) {
                const PadicNumber shifted = gamma.representative(GammaClass{j}) +
                                            rng.random_ball_element(P.prime, -P.level_n, N);
                acc += f.values[j] *
                       phase_to_complex(psi_phase(ball.representative(c) * shifted));
            }
            residual = std::max(residual, std::abs(acc - hat.values[c]));
        }
    }
    return {residual, base_sizes(P), {}};
}

CheckOutcome check_isometry_pairing(const RunConfig& cfg, SeededRng& rng) {
    const LevelParams P = cfg.level();
    const XnGrid grid(P);
    const Space xn{SpaceKind::Xn, P};
    double residual = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const LcFunction f = rng.random_function(xn);
        const LcFunction g = rng.random_function(xn);
        const auto lhs = hs_inner_product(quantize(grid, f), quantize(grid, g));
        const auto rhs = inner_product(f, g);
        residual = std::max(residual, std::abs(lhs - rhs));
    }
    return {residual, base_sizes(P), {}};
}

CheckOutcome check_isometry_roundtrip(const RunConfig& cfg, SeededRng& rng) {
    const LevelParams P = cfg.level();
    const XnGrid grid(P);
    double residual = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const LcFunction f = rng.random_function(Space{SpaceKind::Xn, P});
        const LcFunction back = dequantize(grid, quantize(grid, f));
        residual = std::max(residual, max_abs(back.values - f.values));
    }
    return {residual, base_sizes(P), {}};
}

CheckOutcome check_point_operators(const RunConfig& cfg, SeededRng&) {
    const LevelParams P = cfg.level();
    const XnGrid grid(P);
    const Space unit{SpaceKind::Unit, P};
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(unit.dim(), unit.dim());
    double residual = 0.0;
    for (std::int64_t i = 0; i < grid.size(); ++i) {
        const Eigen::MatrixXcd omega = omega_point(grid, grid.at(i)).matrix();
        residual = std::max(residual, (omega.adjoint() * omega - id).norm() / id.norm());
        residual = std::max(residual, (omega - omega.adjoint()).norm() / id.norm());
        residual = std::max(residual, (omega * omega - id).norm() / id.norm());
    }
    return {residual, base_sizes(P), {}};
}

CheckOutcome check_lift_independence(const RunConfig& cfg, SeededRng& rng) {
    const LevelParams P = cfg.level();
    const XnGrid grid(P);
    const UnitGrid& ug = grid.unit_grid();
    const OperatorMatrix sigma = symmetry_operator(ug);
    const int N = P.working_precision();
    double residual = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const XnElement g = rng.random_xn_element(P);
        const Eigen::MatrixXcd omega = omega_point(grid, g).matrix();
        // Any lift (a, t + s) with s in p^{-n} Z_p conjugates Sigma to the same operator.
        const PadicNumber shifted_t =
            grid.lift_gamma(g) + rng.random_ball_element(P.prime, -P.level_n, N);
        const OperatorMatrix pi = rep_pi(ug, GnPoint{grid.lift_unit(g), shifted_t});
        const Eigen::MatrixXcd conj = (pi * sigma * pi.adjoint()).matrix();
        residual = std::max(residual, (conj - omega).cwiseAbs().maxCoeff());
    }
    return {residual, base_sizes(P), {}};
}

CheckOutcome check_pi_homomorphism(const RunConfig& cfg, SeededRng& rng) {
    const LevelParams P = cfg.level();
    const UnitGrid ug(P);
    const int N = P.working_precision();
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(ug.size(), ug.size());
    double residual = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const GnPoint g{rng.random_principal_unit(P.prime, P.level_n, N),
                        rng.random_ball_element(P.prime, -P.cell_exponent(), N)};
        const GnPoint h{rng.random_principal_unit(P.prime, P.level_n, N),
                        rng.random_ball_element(P.prime, -P.cell_exponent(), N)};
        const OperatorMatrix pg = rep_pi(ug, g);
        const OperatorMatrix ph = rep_pi(ug, h);
        residual =
            std::max(residual, (pg.matrix().adjoint() * pg.matrix() - id).norm() / id.norm());
        // (a,t)(a',t') = (aa', a'^{-1} t + t')
        const GnPoint gh{g.a * h.a, invert(h.a) * g.t + h.t};
        residual = std::max(
            residual, ((pg * ph).matrix() - rep_pi(ug, gh).matrix()).norm() / id.norm());
    }
    return {residual, base_sizes(P), {}};
}

CheckOutcome check_covariance(const RunConfig& cfg, SeededRng& rng) {
    const LevelParams P = cfg.level();
    const XnGrid grid(P);
    const UnitGrid& ug = grid.unit_grid();
    const int N = P.working_precision();
    double residual = 0.0;
    std::vector<LcFunction> fs;
    std::vector<OperatorMatrix> qf;
    for (int i = 0; i < 3; ++i) {
        fs.push_back(rng.random_function(Space{SpaceKind::Xn, P}));
        qf.push_back(quantize(grid, fs.back()));
    }
    // every canonical grid lift, then a handful of non-canonical lifts
    for (std::int64_t i = 0; i < grid.size(); ++i) {
        const XnElement g = grid.at(i);
        const OperatorMatrix pi = rep_pi(ug, GnPoint{grid.lift_unit(g), grid.lift_gamma(g)});
        for (std::size_t k = 0; k < fs.size(); ++k) {
            const Eigen::MatrixXcd lhs = (pi * qf[k] * pi.adjoint()).matrix();
            const Eigen::MatrixXcd rhs = quantize(grid, left_translate(grid, g, fs[k])).matrix();
            residual = std::max(residual, (lhs - rhs).norm());
        }
    }
    for (int trial = 0; trial < 10; ++trial) {
        const PadicNumber a = rng.random_principal_unit(P.prime, P.level_n, N);
        const PadicNumber t = rng.random_ball_element(P.prime, -P.cell_exponent(), N);
        const OperatorMatrix pi = rep_pi(ug, GnPoint{a, t});
        const std::size_t k = static_cast<std::size_t>(trial % 3);
        const Eigen::MatrixXcd lhs = (pi * qf[k] * pi.adjoint()).matrix();
        const Eigen::MatrixXcd rhs = quantize(grid, left_translate(grid, a, t, fs[k])).matrix();
        residual = std::max(residual, (lhs - rhs).norm());
    }
    return {residual, base_sizes(P), {}};
}

CheckOutcome check_star_agreement(const RunConfig& cfg, SeededRng& rng) {
    const LevelParams P = cfg.level();
    const XnGrid grid(P);
    const Space xn{SpaceKind::Xn, P};
    double residual = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const LcFunction f1 = rng.random_function(xn);
        const LcFunction f2 = rng.random_function(xn);
        const LcFunction a = star_product(grid, f1, f2, StarMethod::Kernel);
        const LcFunction b = star_product(grid, f1, f2, StarMethod::HilbertSchmidt);
        residual = std::max(residual, max_abs(a.values - b.values));
    }
    return {residual, base_sizes(P), {}};
}

CheckOutcome check_star_left_equivariance(const RunConfig& cfg, SeededRng& rng) {
    const LevelParams P = cfg.level();
    const XnGrid grid(P);
    const Space xn{SpaceKind::Xn, P};
    double residual = 0.0;
    for (int trial = 0; trial < 3; ++trial) {
        const LcFunction f1 = rng.random_function(xn);
        const LcFunction f2 = rng.random_function(xn);
        const LcFunction prod = star_product(grid, f1, f2, StarMethod::Kernel);
        for (std::int64_t i = 0; i < grid.size(); ++i) {
            const XnElement g = grid.at(i);
            const LcFunction lhs = left_translate(grid, g, prod);
            const LcFunction rhs = star_product(grid, left_translate(grid, g, f1),
                                                left_translate(grid, g, f2), StarMethod::Kernel);
            residual = std::max(residual, max_abs(lhs.values - rhs.values));
        }
    }
    return {residual, base_sizes(P), {}};
}

CheckOutcome check_star_kernel_identities(const RunConfig& cfg, SeededRng& rng) {
    const LevelParams P = cfg.level();
    const XnGrid grid(P);
    const double q2n = static_cast<double>(checked_pow(P.prime, 2 * P.level_n));
    std::int64_t failures = 0;
    const std::int64_t trials = 200;
    for (std::int64_t trial = 0; trial < trials; ++trial) {
        const XnElement g1 = rng.random_xn_element(P);
        const XnElement g2 = rng.random_xn_element(P);
        // K([e],[g1],[g2]) = q^{2n} Psi(-phi(a1) t2 + phi(a2) t1)
        const std::complex<double> lhs = star_kernel(grid, xn_identity(P), g1, g2);
        const Phase explicit_phase = (-psi_phase(phi(grid.lift_unit(g1)) * grid.lift_gamma(g2))) +
                                     psi_phase(phi(grid.lift_unit(g2)) * grid.lift_gamma(g1));
        if (std::abs(lhs - q2n * phase_to_complex(explicit_phase)) > 1e-12) ++failures;
        // diagonal invariance under left translation
        const XnElement h = rng.random_xn_element(P);
        const XnElement g0 = rng.random_xn_element(P);
        const std::complex<double> plain = star_kernel(grid, g0, g1, g2);
        const std::complex<double> moved =
            star_kernel(grid, xn_mul(h, g0), xn_mul(h, g1), xn_mul(h, g2));
        if (std::abs(plain - moved) > 1e-12) ++failures;
    }
    return {static_cast<double>(failures) / static_cast<double>(trials), base_sizes(P), {}};
}

CheckOutcome check_star_associativity(const RunConfig& cfg, SeededRng& rng) {
    const LevelParams P = cfg.level();
    const XnGrid grid(P);
    const Space xn{SpaceKind::Xn, P};
    double residual = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const LcFunction f1 = rng.random_function(xn);
        const LcFunction f2 = rng.random_function(xn);
        const LcFunction f3 = rng.random_function(xn);
        const LcFunction left = star_product(grid, star_product(grid, f1, f2, StarMethod::Kernel),
                                             f3, StarMethod::Kernel);
        const LcFunction right = star_product(
            grid, f1, star_product(grid, f2, f3, StarMethod::Kernel), StarMethod::Kernel);
        residual = std::max(residual, max_abs(left.values - right.values));
    }
    return {residual, base_sizes(P), {}};
}

XiPoint random_xi_point(SeededRng& rng, const LevelParams& P) {
    const int N = P.working_precision();
    return XiPoint{rng.random_principal_unit(P.prime, P.level_n, N),
                   rng.random_ball_element(P.prime, P.level_n, N),
                   rng.random_principal_unit(P.prime, P.level_n, N),
                   rng.random_ball_element(P.prime, P.level_n, N)};
}

bool xi_points_equal(const XiPoint& a, const XiPoint& b) {
    return a.a1 == b.a1 && a.x1 == b.x1 && a.a2 == b.a2 && a.x2 == b.x2;
}

CheckOutcome check_xi_roundtrip(const RunConfig& cfg, SeededRng& rng) {
    const LevelParams P = cfg.level();
    std::int64_t failures = 0;
    const std::int64_t trials = 200;
    for (std::int64_t trial = 0; trial < trials; ++trial) {
        const XiPoint p = random_xi_point(rng, P);
        validate_xi_point(P, p);
        if (!xi_points_equal(xi_inverse(xi_forward(p)), p)) ++failures;
        if (!xi_points_equal(xi_forward(xi_inverse(p)), p)) ++failures;
    }
    return {static_cast<double>(failures) / static_cast<double>(2 * trials), base_sizes(P), {}};
}

CheckOutcome check_xi_branch_selection(const RunConfig& cfg, SeededRng& rng) {
    const LevelParams P = cfg.level();
    const int N = P.working_precision();
    std::int64_t failures = 0;
    const std::int64_t trials = 200;
    for (std::int64_t trial = 0; trial < trials; ++trial) {
        const PadicNumber x1 = rng.random_ball_element_nonzero(P.prime, P.level_n, N);
        const PadicNumber x2 = rng.random_ball_element(P.prime, P.level_n, N);
        if (!xi_branch_admissible(x1, x2, true)) ++failures;
        if (xi_branch_admissible(x1, x2, false)) ++failures; // U_- must be rejected
    }
    return {static_cast<double>(failures) / static_cast<double>(2 * trials), base_sizes(P), {}};
}

CheckOutcome check_xi_swap_symmetry(const RunConfig& cfg, SeededRng& rng) {
    const LevelParams P = cfg.level();
    std::int64_t failures = 0;
    const std::int64_t trials = 100;
    const auto swapped = [](const XiPoint& p) { return XiPoint{p.a2, -p.x2, p.a1, -p.x1}; };
    for (std::int64_t trial = 0; trial < trials; ++trial) {
        const XiPoint p = random_xi_point(rng, P);
        if (!xi_points_equal(xi_forward(swapped(p)), swapped(xi_forward(p)))) ++failures;
        if (!xi_points_equal(xi_inverse(swapped(p)), swapped(xi_inverse(p)))) ++failures;
    }
    return {static_cast<double>(failures) / static_cast<double>(2 * trials), base_sizes(P), {}};
}

CheckOutcome check_xi_jacobian_abs(const RunConfig& cfg, SeededRng& rng) {
    const LevelParams P = cfg.level();
    std::int64_t failures = 0;
    const std::int64_t trials = 200;
    for (std::int64_t trial = 0; trial < trials; ++trial) {
        const XiPoint p = random_xi_point(rng, P);
        if (!(xi_jacobian_abs(p) == AbsValue{1, 1})) ++failures;
    }
    return {static_cast<double>(failures) / static_cast<double>(trials), base_sizes(P), {}};
}

CheckOutcome check_xi_jacobian_terms(const RunConfig& cfg, SeededRng& rng) {
    const LevelParams P = cfg.level();
    std::int64_t failures = 0;
    const std::int64_t trials = 200;
    for (std::int64_t trial = 0; trial < trials; ++trial) {
        const XiPoint p = random_xi_point(rng, P);
        const PadicNumber first = phi_inv(-(invert(p.a1) * p.x1)) * phi_inv(invert(p.a2) * p.x2);
        const PadicNumber second = xi_jacobian(p) - first;
        if (!first.in_principal_units(P.level_n)) ++failures;
        if (!second.in_ball(2 * P.level_n)) ++failures;
    }
    return {static_cast<double>(failures) / static_cast<double>(trials), base_sizes(P), {}};
}

CheckOutcome check_xi_permutation(const RunConfig& cfg, SeededRng&) {
    const LevelParams P = cfg.level();
    auto sizes = base_sizes(P);
    sizes["xi_cells"] = checked_pow(P.prime, 4 * P.resolution_m);
    try {
        induced_grid_permutation(P, XiDirection::Forward);
    } catch (const NotAPermutationError&) {
        return {1.0, sizes, "induced cell map is not a bijection"};
    }
    return {0.0, sizes, {}};
}

CheckOutcome check_xi_permutation_inverse(const RunConfig& cfg, SeededRng&) {
    const LevelParams P = cfg.level();
    auto sizes = base_sizes(P);
    sizes["xi_cells"] = checked_pow(P.prime, 4 * P.resolution_m);
    const auto fwd = induced_grid_permutation(P, XiDirection::Forward);
    const auto inv = induced_grid_permutation(P, XiDirection::Inverse);
    std::int64_t failures = 0;
    for (std::size_t i = 0; i < fwd.size(); ++i)
        if (inv[static_cast<std::size_t>(fwd[i])] != static_cast<std::int64_t>(i)) ++failures;
    // cells with x1 = x2 = 0 are fixed points of the change of variables
    const std::int64_t pm = P.pow_m();
    for (std::int64_t u1 = 0; u1 < pm; ++u1)
        for (std::int64_t u2 = 0; u2 < pm; ++u2) {
            const std::int64_t idx = ((u1 * pm + 0) * pm + u2) * pm + 0;
            if (fwd[static_cast<std::size_t>(idx)] != idx) ++failures;
        }
    return {static_cast<double>(failures) / static_cast<double>(fwd.size()), sizes, {}};
}

CheckOutcome check_twist_oracle(const RunConfig& cfg, SeededRng&) {
    const LevelParams P = cfg.level();
    const XnGrid grid(P);
    const TwistOperator direct = build_twist(grid, TwistMethod::Direct, cfg.budget_mb);
    const TwistOperator fact = build_twist(grid, TwistMethod::Factorized, cfg.budget_mb);
    auto sizes = base_sizes(P);
    sizes["twist_dim"] = direct.mat.rows();
    const double residual = (direct.mat - fact.mat).cwiseAbs().maxCoeff();
    return {residual, sizes, {}};
}

CheckOutcome check_twist_adjoint(const RunConfig& cfg, SeededRng&) {
    const LevelParams P = cfg.level();
    const XnGrid grid(P);
    const TwistOperator tw = build_twist(grid, TwistMethod::Direct, cfg.budget_mb);
    auto sizes = base_sizes(P);
    sizes["twist_dim"] = tw.mat.rows();
    const Eigen::MatrixXcd adj = twist_adjoint_matrix(grid, tw);
    double residual = (adj - tw.mat.adjoint()).cwiseAbs().maxCoeff();
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(tw.mat.rows(), tw.mat.cols());
    residual = std::max(residual, (adj * tw.mat - id).norm() / id.norm());
    return {residual, sizes, {}};
}

CheckOutcome check_twist_identity_coefficient(const RunConfig& cfg, SeededRng&) {
    const LevelParams P = cfg.level();
    const XnGrid grid(P);
    const Eigen::MatrixXcd coeff = twist_coefficients(grid); // no dense matrix needed
    const double expected = static_cast<double>(checked_pow(P.prime, 2 * P.level_n)) *
                            grid.cell_weight() * grid.cell_weight();
    double residual = std::abs(coeff(0, 0) - std::complex<double>(expected, 0.0));
    for (std::int64_t i = 0; i < coeff.rows(); ++i)
        for (std::int64_t j = 0; j < coeff.cols(); ++j)
            residual = std::max(residual, std::abs(std::abs(coeff(i, j)) - expected));
    return {residual, base_sizes(P), {}};
}

CheckOutcome check_unitarity(const RunConfig& cfg, SeededRng&) {
    const LevelParams P = cfg.level();
    auto sizes = base_sizes(P);
    const std::int64_t d = P.pow_m() * P.pow_m();
    const std::int64_t dim = d * d;
    sizes["twist_dim"] = dim;
    try {
        const XnGrid grid(P);
        const TwistOperator tw = build_twist(grid, TwistMethod::Direct, cfg.budget_mb);
        return {unitarity_residual(tw), sizes, "dense"};
    } catch (const OutOfBudgetError&) {
        // Certificate route: F is unitary iff the cell permutation is exact
        // and the scaled partial Fourier factor is unitary.
        const StructuredUnitarityEvidence ev = structured_unitarity(P);
        return {ev.residual(), sizes, "structured (dense matrix over budget)"};
    }
}

// Twist restricted to its coefficient function: the dense p^{4m} matrix is
// not needed for the cocycle checks.
TwistOperator twist_coefficients_only(const XnGrid& grid) {
    TwistOperator tw;
    tw.params = grid.params();
    tw.method = TwistMethod::Direct;
    tw.coeff = twist_coefficients(grid);
    return tw;
}

double cocycle_residual_auto(const XnGrid& grid, const TwistOperator& tw, std::int64_t budget_mb,
                             std::string& note) {
    try {
        const double r = cocycle_residual(grid, tw, budget_mb);
        note = "dense triple space";
        return r;
    } catch (const OutOfBudgetError&) {
        const double r = cocycle_residual_coefficients(grid, tw, budget_mb);
        note = "coefficient convolution (dense triple space over budget)";
        return r;
    }
}

CheckOutcome check_cocycle(const RunConfig& cfg, SeededRng&) {
    const LevelParams P = cfg.level();
    const XnGrid grid(P);
    auto sizes = base_sizes(P);
    sizes["triple_dim"] = checked_pow(P.prime, 6 * P.resolution_m);
    const TwistOperator tw = twist_coefficients_only(grid);
    std::string note;
    const double residual = cocycle_residual_auto(grid, tw, cfg.budget_mb, note);
    return {residual, sizes, note};
}

CheckOutcome check_cocycle_trivial(const RunConfig& cfg, SeededRng&) {
    const LevelParams P = cfg.level();
    const XnGrid grid(P);
    auto sizes = base_sizes(P);
    sizes["triple_dim"] = checked_pow(P.prime, 6 * P.resolution_m);
    TwistOperator tw;
    tw.params = P;
    tw.method = TwistMethod::Direct;
    const std::int64_t d = grid.size();
    tw.coeff = Eigen::MatrixXcd::Zero(d, d);
    tw.coeff(0, 0) = 1.0; // delta at the identity pair: the trivial cocycle
    std::string note;
    const double residual = cocycle_residual_auto(grid, tw, cfg.budget_mb, note);
    return {residual, sizes, note};
}

CheckOutcome check_cocycle_phase_invariance(const RunConfig& cfg, SeededRng& rng) {
    const LevelParams P = cfg.level();
    const XnGrid grid(P);
    auto sizes = base_sizes(P);
    sizes["triple_dim"] = checked_pow(P.prime, 6 * P.resolution_m);
    TwistOperator tw = twist_coefficients_only(grid);
    std::string note;
    const double base = cocycle_residual_auto(grid, tw, cfg.budget_mb, note);
    const std::complex<double> scalar = std::polar(1.0, 2.0 * M_PI * rng.uniform01());
    tw.coeff *= scalar;
    const double scaled = cocycle_residual_auto(grid, tw, cfg.budget_mb, note);
    return {std::abs(scaled - base), sizes, note};
}

// ---------------------------------------------------------------------------

std::vector<CheckDef> build_registry(const RunConfig& cfg) {
    const double tight = kTightTolerance;
    const double standard = cfg.tolerance;
    const double exact = 0.0;
    auto wrap = [cptr = &cfg](CheckOutcome (*fn)(const RunConfig&, SeededRng&)) {
        return [fn, cptr](SeededRng& rng) { return fn(*cptr, rng); };
    };
    return {
        {"substitution", "substitution/square", tight, wrap(check_substitution_square)},
        {"substitution", "substitution/phi", tight, wrap(check_substitution_phi)},
        {"plancherel", "plancherel/roundtrip", tight, wrap(check_plancherel_roundtrip)},
        {"plancherel", "plancherel/scaling", tight, wrap(check_plancherel_scaling)},
        {"plancherel", "plancherel/counting-bridge", tight, wrap(check_plancherel_counting_bridge)},
        {"plancherel", "plancherel/field-fourier", tight, wrap(check_plancherel_field_fourier)},
        {"plancherel", "plancherel/unitary-scaled", tight, wrap(check_plancherel_unitary_scaled)},
        {"plancherel", "plancherel/representative-independence", tight,
         wrap(check_plancherel_representative_independence)},
        {"omega-isometry", "omega-isometry/pairing", tight, wrap(check_isometry_pairing)},
        {"omega-isometry", "omega-isometry/roundtrip", tight, wrap(check_isometry_roundtrip)},
        {"omega-isometry", "omega-isometry/point-operators", standard, wrap(check_point_operators)},
        {"omega-isometry", "omega-isometry/lift-independence", standard,
         wrap(check_lift_independence)},
        {"omega-isometry", "omega-isometry/pi-homomorphism", standard, wrap(check_pi_homomorphism)},
        {"covariance", "covariance/pi-conjugation", standard, wrap(check_covariance)},
        {"star-agreement", "star-agreement/kernel-vs-operator", standard,
         wrap(check_star_agreement)},
        {"star-agreement", "star-agreement/left-equivariance", standard,
         wrap(check_star_left_equivariance)},
        {"star-agreement", "star-agreement/kernel-identities", exact,
         wrap(check_star_kernel_identities)},
        {"star-associativity", "star-associativity/kernel", standard,
         wrap(check_star_associativity)},
        {"xi-roundtrip", "xi-roundtrip/inverse-composition", exact, wrap(check_xi_roundtrip)},
        {"xi-roundtrip", "xi-roundtrip/branch-selection", exact, wrap(check_xi_branch_selection)},
        {"xi-roundtrip", "xi-roundtrip/swap-symmetry", exact, wrap(check_xi_swap_symmetry)},
        {"xi-jacobian", "xi-jacobian/abs-one", exact, wrap(check_xi_jacobian_abs)},
        {"xi-jacobian", "xi-jacobian/term-structure", exact, wrap(check_xi_jacobian_terms)},
        {"xi-permutation", "xi-permutation/bijective", exact, wrap(check_xi_permutation)},
        {"xi-permutation", "xi-permutation/inverse-consistency", exact,
         wrap(check_xi_permutation_inverse)},
        {"twist-oracle", "twist-oracle/direct-vs-factorized", standard, wrap(check_twist_oracle)},
        {"twist-oracle", "twist-oracle/adjoint-consistency", standard, wrap(check_twist_adjoint)},
        {"twist-oracle", "twist-oracle/identity-coefficient", standard,
         wrap(check_twist_identity_coefficient)},
        {"unitarity", "unitarity/residual", standard, wrap(check_unitarity)},
        {"cocycle", "cocycle/relation", standard, wrap(check_cocycle)},
        {"cocycle", "cocycle/trivial-coefficients", standard, wrap(check_cocycle_trivial)},
        {"cocycle", "cocycle/phase-invariance", standard, wrap(check_cocycle_phase_invariance)},
    };
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "substitution", "plancherel",         "omega-isometry", "covariance",
        "star-agreement", "star-associativity", "xi-roundtrip",   "xi-jacobian",
        "xi-permutation", "twist-oracle",      "unitarity",      "cocycle",
    };
    return names;
}

bool is_suite_name(const std::string& name) {
    if (name == "all") return true;
    const auto& names = suite_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

std::vector<CheckReport> run_suite(const RunConfig& config, const std::string& suite) {
    config.validate();
    if (!is_suite_name(suite)) throw ConfigError("unknown suite: " + suite);
    const LevelParams P = config.level();
    std::vector<CheckReport> reports;
    for (const CheckDef& def : build_registry(config)) {
        if (suite != "all" && def.suite != suite) continue;
        SeededRng rng(config.seed ^ fnv1a(def.name));
        const auto start = std::chrono::steady_clock::now();
        double residual;
        std::map<std::string, std::int64_t> sizes;
        std::string note;
        try {
            CheckOutcome out = def.body(rng);
            residual = out.residual;
            sizes = std::move(out.grid_sizes);
            note = std::move(out.note);
        } catch (const OutOfBudgetError& e) {
            residual = std::numeric_limits<double>::infinity();
            sizes = base_sizes(P);
            note = e.what();
        }
        const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - start)
                                 .count();
        reports.push_back(make_report(def.name, def.suite, P, residual, def.tolerance, elapsed,
                                      std::move(sizes), std::move(note)));
    }
    return reports;
}

} // namespace fuchs
