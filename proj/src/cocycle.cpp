#include "fuchs/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "internal.hpp"

namespace fuchs {

namespace {

// Kronecker product, row-major index pairing (i1*rows2 + i2, j1*cols2 + j2).
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd r(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return r;
}

PadicNumber one_at(const PadicNumber& like) {
    return PadicNumber::from_integer(like.prime(), 1, like.precision());
}

PadicNumber half_of(const PadicNumber& x) {
    return x * PadicNumber::from_rational(x.prime(), 1, 2, x.precision());
}

// flat(g2 g1^{-1}) for all grid pairs; the convolution index of the twist.
std::vector<std::int64_t> right_quotient_table(const XnGrid& grid) {
    const std::int64_t d = grid.size();
    std::vector<std::int64_t> table(static_cast<std::size_t>(d * d));
    std::vector<XnElement> inverses;
    inverses.reserve(static_cast<std::size_t>(d));
    for (std::int64_t x = 0; x < d; ++x) inverses.push_back(xn_inv(grid.at(x)));
    for (std::int64_t x = 0; x < d; ++x)
        for (std::int64_t y = 0; y < d; ++y)
            table[static_cast<std::size_t>(x * d + y)] =
                grid.flat(xn_mul(grid.at(y), inverses[static_cast<std::size_t>(x)]));
    return table;
}

} // namespace

void ensure_budget(std::int64_t bytes, std::int64_t budget_mb, const char* what) {
    if (budget_mb <= 0) return;
    const std::int64_t budget_bytes = budget_mb * 1024 * 1024;
    if (bytes > budget_bytes)
        throw OutOfBudgetError(std::string(what) + " needs " + std::to_string(bytes / (1024 * 1024)) +
                               " MiB, over the " + std::to_string(budget_mb) + " MiB budget");
}

void validate_xi_point(const LevelParams& params, const XiPoint& p) {
    if (p.a1.prime() != params.prime || p.a2.prime() != params.prime ||
        p.x1.prime() != params.prime || p.x2.prime() != params.prime)
        throw ParameterMismatchError("xi point over a different prime");
    if (!p.a1.in_principal_units(params.level_n) || !p.a2.in_principal_units(params.level_n))
        throw DomainError("xi point: a-components must lie in U_n");
    if (!p.x1.in_ball(params.level_n) || !p.x2.in_ball(params.level_n))
        throw DomainError("xi point: x-components must lie in p^n Z_p");
}

XiPoint xi_forward(const XiPoint& p) {
    return XiPoint{
        phi_inv(invert(p.a2) * p.x2) * p.a1,
        p.x1,
        phi_inv(-(invert(p.a1) * p.x1)) * p.a2,
        p.x2,
    };
}

XiPoint xi_inverse(const XiPoint& p) {
    const PadicNumber one = one_at(p.a1);
    const PadicNumber r1 = p.x1 * invert(p.a1);
    const PadicNumber r2 = p.x2 * invert(p.a2);
    const PadicNumber s = sqrt_unit(one + half_of(r1 + r2) * half_of(r1 + r2));
    const PadicNumber h = half_of(r1 * r2);
    const PadicNumber a2 = p.a2 * sqrt_unit(one + h + half_of(r1 * r1) + r1 * s);
    const PadicNumber a1 = p.a1 * sqrt_unit(one + h + half_of(r2 * r2) - r2 * s);
    return XiPoint{a1, p.x1, a2, p.x2};
}

PadicNumber xi_jacobian(const XiPoint& p) {
    const PadicNumber one = one_at(p.a1);
    const PadicNumber u = phi_inv(-(invert(p.a1) * p.x1));
    const PadicNumber v = phi_inv(invert(p.a2) * p.x2);
    const PadicNumber first = u * v;
    const PadicNumber second = invert(p.a1) * invert(p.a2) *
                               invert(one + invert(u * u)) * invert(one + invert(v * v)) *
                               p.x1 * p.x2;
    return first + second;
}

AbsValue xi_jacobian_abs(const XiPoint& p) { return xi_jacobian(p).abs_exact(); }

bool xi_branch_admissible(const PadicNumber& x_first, const PadicNumber& x_second,
                          bool plus_branch) {
    const PadicNumber one = one_at(x_first);
    const PadicNumber hs = half_of(x_first + x_second);
    const PadicNumber s = sqrt_unit(one + hs * hs);
    const PadicNumber cross = half_of(x_first * x_second) + half_of(x_first * x_first);
    const PadicNumber u = plus_branch ? one + cross + x_first * s : one + cross - x_first * s;
    const PadicNumber lhs = x_first * u;
    const PadicNumber q2 = half_of(x_second) * half_of(x_second);
    const PadicNumber rhs = (sqrt_unit(u + q2) - half_of(x_second)) * (u - one);
    return lhs.equals(rhs);
}

std::vector<std::int64_t> induced_grid_permutation(const LevelParams& params, XiDirection dir) {
    const UnitGrid ug(params);
    const BallGrid bg(params);
    const std::int64_t pm = params.pow_m();
    const std::int64_t total = pm * pm * pm * pm;
    std::vector<std::int64_t> perm(static_cast<std::size_t>(total));
    std::vector<char> seen(static_cast<std::size_t>(total), 0);
    for (std::int64_t iu1 = 0; iu1 < pm; ++iu1)
        for (std::int64_t ix1 = 0; ix1 < pm; ++ix1)
            for (std::int64_t iu2 = 0; iu2 < pm; ++iu2)
                for (std::int64_t ix2 = 0; ix2 < pm; ++ix2) {
                    const XiPoint cell{ug.representative(UnitClass{iu1}), bg.representative(ix1),
                                       ug.representative(UnitClass{iu2}), bg.representative(ix2)};
                    const XiPoint image =
                        dir == XiDirection::Forward ? xi_forward(cell) : xi_inverse(cell);
                    const std::int64_t target =
                        ((ug.locate(image.a1).index * pm + bg.locate(image.x1)) * pm +
                         ug.locate(image.a2).index) *
                            pm +
                        bg.locate(image.x2);
                    const std::int64_t source = ((iu1 * pm + ix1) * pm + iu2) * pm + ix2;
                    perm[static_cast<std::size_t>(source)] = target;
                    seen[static_cast<std::size_t>(target)] = 1;
                }
    for (std::int64_t i = 0; i < total; ++i)
        if (!seen[static_cast<std::size_t>(i)])
            throw NotAPermutationError(
                "the induced cell map of the change of variables misses cell " + std::to_string(i) +
                "; this contradicts the level truncation law and indicates a bug");
    return perm;
}

Eigen::MatrixXcd twist_coefficients(const XnGrid& grid) {
    // c(g1,g2) = q^{2n} w^2 Psi(phi(a1) t2 - phi(a2) t1), exact phases with
    // denominator p^M.
    const LevelParams& P = grid.params();
    const std::int64_t d = grid.size();
    const std::int64_t pm = P.pow_m();
    const std::int64_t pM = checked_pow(P.prime, P.cell_exponent());
    const auto roots = detail::unit_roots(pM);
    std::vector<std::int64_t> phi_res(static_cast<std::size_t>(pm));
    for (std::int64_t i = 0; i < pm; ++i)
        phi_res[static_cast<std::size_t>(i)] =
            phi(grid.unit_grid().representative(UnitClass{i})).residue(P.cell_exponent());
    const double scale = static_cast<double>(checked_pow(P.prime, 2 * P.level_n)) *
                         grid.cell_weight() * grid.cell_weight();
    Eigen::MatrixXcd coeff(d, d);
    for (std::int64_t g1 = 0; g1 < d; ++g1) {
        const std::int64_t i1 = g1 / pm, k1 = g1 % pm;
        for (std::int64_t g2 = 0; g2 < d; ++g2) {
            const std::int64_t i2 = g2 / pm, k2 = g2 % pm;
            const std::int64_t num =
                (detail::mulmod(phi_res[static_cast<std::size_t>(i1)], k2, pM) -
                 detail::mulmod(phi_res[static_cast<std::size_t>(i2)], k1, pM) + pM) %
                pM;
            coeff(g1, g2) = scale * roots[static_cast<std::size_t>(num)];
        }
    }
    return coeff;
}

TwistOperator build_twist(const XnGrid& grid, TwistMethod method, std::int64_t budget_mb) {
    const LevelParams& P = grid.params();
    const std::int64_t d = grid.size();      // p^{2m}
    const std::int64_t dim = d * d;           // p^{4m}
    ensure_budget(5 * dim * dim * 16, budget_mb, "dense twist matrix");

    TwistOperator tw;
    tw.params = P;
    tw.method = method;

    if (method == TwistMethod::Direct) {
        tw.coeff = twist_coefficients(grid);
        // F[(x1,x2),(y1,y2)] = c(y1 x1^{-1}, y2 x2^{-1}): each tensor-product
        // translation contributes exactly one coefficient per entry.
        const std::vector<std::int64_t> quot = right_quotient_table(grid);
        auto q = [&](std::int64_t x, std::int64_t y) {
            return quot[static_cast<std::size_t>(x * d + y)];
        };
        tw.mat.resize(dim, dim);
        for (std::int64_t x1 = 0; x1 < d; ++x1)
            for (std::int64_t x2 = 0; x2 < d; ++x2)
                for (std::int64_t y1 = 0; y1 < d; ++y1)
                    for (std::int64_t y2 = 0; y2 < d; ++y2)
                        tw.mat(x1 * d + x2, y1 * d + y2) = tw.coeff(q(x1, y1), q(x2, y2));
        return tw;
    }

    // Factorized: F = (Id ⊗ F_Γ^{-1} ⊗ Id ⊗ F_Γ^{-1}) T_Ξ (Id ⊗ F_Γ ⊗ Id ⊗ F_Γ)
    // in the orthonormal bases; the scalar normalizations cancel.
    const std::int64_t pm = P.pow_m();
    const Eigen::MatrixXcd G = gamma_character_matrix(P);
    const double sqrt_w = std::sqrt(P.cell_weight());
    const Eigen::MatrixXcd m_fwd = sqrt_w * G;
    const Eigen::MatrixXcd m_inv =
        static_cast<double>(checked_pow(P.prime, P.level_n)) * sqrt_w * G.adjoint();
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(pm, pm);
    const Eigen::MatrixXcd fwd_full = kron(kron(id, m_fwd), kron(id, m_fwd));
    const Eigen::MatrixXcd inv_full = kron(kron(id, m_inv), kron(id, m_inv));

    const std::vector<std::int64_t> perm = induced_grid_permutation(P, XiDirection::Forward);
    Eigen::MatrixXcd permuted(dim, dim); // T_Ξ · fwd_full, a row gather
    for (std::int64_t r = 0; r < dim; ++r)
        permuted.row(r) = fwd_full.row(perm[static_cast<std::size_t>(r)]);
    tw.mat = inv_full * permuted;

    // The twist is a group convolution, so its coefficients sit in the rows
    // at the identity pair: c(g1,g2) = F[(e,e),(g1,g2)].
    tw.coeff.resize(d, d);
    for (std::int64_t g1 = 0; g1 < d; ++g1)
        for (std::int64_t g2 = 0; g2 < d; ++g2) tw.coeff(g1, g2) = tw.mat(0, g1 * d + g2);
    return tw;
}

Eigen::MatrixXcd twist_adjoint_matrix(const XnGrid& grid, const TwistOperator& twist) {
    const std::int64_t d = grid.size();
    const std::vector<std::int64_t> quot = right_quotient_table(grid);
    auto q = [&](std::int64_t x, std::int64_t y) {
        return quot[static_cast<std::size_t>(x * d + y)];
    };
    Eigen::MatrixXcd adj(d * d, d * d);
    // F* carries conj(c) at lambda_{g1} ⊗ lambda_{g2}: entry[(x),(y)] = conj c(x1 y1^{-1}, x2 y2^{-1}).
    for (std::int64_t x1 = 0; x1 < d; ++x1)
        for (std::int64_t x2 = 0; x2 < d; ++x2)
            for (std::int64_t y1 = 0; y1 < d; ++y1)
                for (std::int64_t y2 = 0; y2 < d; ++y2)
                    adj(x1 * d + x2, y1 * d + y2) = std::conj(twist.coeff(q(y1, x1), q(y2, x2)));
    return adj;
}

double unitarity_residual(const TwistOperator& twist) {
    const Eigen::Index dim = twist.mat.rows();
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
    const double left = (twist.mat.adjoint() * twist.mat - id).norm();
    const double right = (twist.mat * twist.mat.adjoint() - id).norm();
    return std::max(left, right) / id.norm();
}

StructuredUnitarityEvidence structured_unitarity(const LevelParams& params) {
    StructuredUnitarityEvidence ev;
    try {
        induced_grid_permutation(params, XiDirection::Forward);
        ev.permutation_bijective = true;
    } catch (const NotAPermutationError&) {
        ev.permutation_bijective = false;
    }
    const Eigen::MatrixXcd G = gamma_character_matrix(params);
    const double scale =
        static_cast<double>(checked_pow(params.prime, params.level_n)) * params.cell_weight();
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(G.rows(), G.cols());
    ev.fourier_residual = (scale * (G.adjoint() * G) - id).norm() / id.norm();
    return ev;
}

double cocycle_residual(const XnGrid& grid, const TwistOperator& twist, std::int64_t budget_mb) {
    const std::int64_t d = grid.size(); // p^{2m}
    const std::int64_t dim = d * d * d; // p^{6m}
    ensure_budget(6 * dim * dim * 16, budget_mb, "triple-space cocycle check");

    const std::vector<std::int64_t> quot = right_quotient_table(grid);
    auto q = [&](std::int64_t x, std::int64_t y) {
        return quot[static_cast<std::size_t>(x * d + y)];
    };
    const Eigen::MatrixXcd& c = twist.coeff;

    Eigen::MatrixXcd one_f(dim, dim);        // 1 ⊗ F
    Eigen::MatrixXcd id_delta(dim, dim);     // (ι ⊗ Δ̂)(F)
    Eigen::MatrixXcd f_one(dim, dim);        // F ⊗ 1
    Eigen::MatrixXcd delta_id(dim, dim);     // (Δ̂ ⊗ ι)(F)
    for (std::int64_t x1 = 0; x1 < d; ++x1)
        for (std::int64_t x2 = 0; x2 < d; ++x2)
            for (std::int64_t x3 = 0; x3 < d; ++x3) {
                const std::int64_t row = (x1 * d + x2) * d + x3;
                for (std::int64_t y1 = 0; y1 < d; ++y1)
                    for (std::int64_t y2 = 0; y2 < d; ++y2)
                        for (std::int64_t y3 = 0; y3 < d; ++y3) {
                            const std::int64_t col = (y1 * d + y2) * d + y3;
                            const std::int64_t q1 = q(x1, y1);
                            const std::int64_t q2 = q(x2, y2);
                            const std::int64_t q3 = q(x3, y3);
                            one_f(row, col) = (x1 == y1) ? c(q2, q3) : 0.0;
                            id_delta(row, col) = (q2 == q3) ? c(q1, q2) : 0.0;
                            f_one(row, col) = (x3 == y3) ? c(q1, q2) : 0.0;
                            delta_id(row, col) = (q1 == q2) ? c(q1, q3) : 0.0;
                        }
            }

    const Eigen::MatrixXcd lhs = one_f * id_delta;
    const Eigen::MatrixXcd rhs = f_one * delta_id;
    return (lhs - rhs).norm() / lhs.norm();
}

double cocycle_residual_coefficients(const XnGrid& grid, const TwistOperator& twist,
                                     std::int64_t budget_mb) {
    const std::int64_t d = grid.size(); // p^{2m}
    const std::int64_t D = d * d * d;   // p^{6m} coefficients per side
    ensure_budget((2 * D + d * d) * 16, budget_mb, "coefficient-space cocycle check");

    // left-translation table: flat(h^{-1} k)
    std::vector<std::int64_t> trans(static_cast<std::size_t>(d * d));
    for (std::int64_t h = 0; h < d; ++h) {
        const XnElement hinv = xn_inv(grid.at(h));
        for (std::int64_t k = 0; k < d; ++k)
            trans[static_cast<std::size_t>(h * d + k)] = grid.flat(xn_mul(hinv, grid.at(k)));
    }
    auto tr = [&](std::int64_t h, std::int64_t k) {
        return trans[static_cast<std::size_t>(h * d + k)];
    };

    const Eigen::MatrixXcd& c = twist.coeff;
    double diff2 = 0.0, lhs2 = 0.0;
    for (std::int64_t k1 = 0; k1 < d; ++k1)
        for (std::int64_t k2 = 0; k2 < d; ++k2)
            for (std::int64_t k3 = 0; k3 < d; ++k3) {
                std::complex<double> cl = 0.0, cr = 0.0;
                for (std::int64_t h = 0; h < d; ++h) {
                    cl += c(tr(h, k2), tr(h, k3)) * c(k1, h);
                    cr += c(tr(h, k1), tr(h, k2)) * c(h, k3);
                }
                lhs2 += std::norm(cl);
                diff2 += std::norm(cl - cr);
            }
    return std::sqrt(diff2 / lhs2);
}

} // namespace fuchs
