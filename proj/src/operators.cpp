#include "fuchs/operators.hpp"

#include <cmath>

#include "internal.hpp"

namespace fuchs {

namespace {

void check_space(const Space& got, const Space& want, const char* what) {
    if (!(got == want)) throw ParameterMismatchError(std::string(what) + ": space mismatch");
}

double quantize_scale(const LevelParams& P) {
    return static_cast<double>(checked_pow(P.prime, P.level_n)); // q^n
}

} // namespace

OperatorMatrix::OperatorMatrix(Space domain, Space codomain, Eigen::MatrixXcd mat)
    : domain_(domain), codomain_(codomain), mat_(std::move(mat)) {
    if (mat_.rows() != codomain_.dim() || mat_.cols() != domain_.dim())
        throw ParameterMismatchError("OperatorMatrix: matrix shape does not match the spaces");
}

OperatorMatrix OperatorMatrix::identity(const Space& space) {
    return OperatorMatrix(space, space, Eigen::MatrixXcd::Identity(space.dim(), space.dim()));
}

OperatorMatrix OperatorMatrix::adjoint() const {
    return OperatorMatrix(codomain_, domain_, mat_.adjoint());
}

OperatorMatrix OperatorMatrix::operator*(const OperatorMatrix& rhs) const {
    check_space(rhs.codomain_, domain_, "compose");
    return OperatorMatrix(rhs.domain_, codomain_, mat_ * rhs.mat_);
}

OperatorMatrix OperatorMatrix::operator+(const OperatorMatrix& rhs) const {
    check_space(rhs.domain_, domain_, "add");
    check_space(rhs.codomain_, codomain_, "add");
    return OperatorMatrix(domain_, codomain_, mat_ + rhs.mat_);
}

OperatorMatrix OperatorMatrix::operator-(const OperatorMatrix& rhs) const {
    check_space(rhs.domain_, domain_, "subtract");
    check_space(rhs.codomain_, codomain_, "subtract");
    return OperatorMatrix(domain_, codomain_, mat_ - rhs.mat_);
}

OperatorMatrix operator*(std::complex<double> scalar, const OperatorMatrix& op) {
    return OperatorMatrix(op.domain_, op.codomain_, scalar * op.mat_);
}

LcFunction OperatorMatrix::apply(const LcFunction& f) const {
    check_space(f.space, domain_, "apply");
    // values -> orthonormal coordinates -> values
    const double win = std::sqrt(domain_.cell_weight());
    const double wout = std::sqrt(codomain_.cell_weight());
    return LcFunction{codomain_, (win / wout) * (mat_ * f.values)};
}

std::complex<double> hs_inner_product(const OperatorMatrix& a, const OperatorMatrix& b) {
    check_space(b.domain(), a.domain(), "hs_inner_product");
    check_space(b.codomain(), a.codomain(), "hs_inner_product");
    if (a.domain().kind != SpaceKind::Unit || a.codomain().kind != SpaceKind::Unit)
        throw ParameterMismatchError("hs_inner_product is defined for operators on L2(U_n)");
    const double inv_formal_degree =
        1.0 / static_cast<double>(checked_pow(a.domain().params.prime, a.domain().params.level_n));
    return inv_formal_degree * (a.matrix().conjugate().cwiseProduct(b.matrix())).sum();
}

OperatorMatrix symmetry_operator(const UnitGrid& grid) {
    const Space space{SpaceKind::Unit, grid.params()};
    Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
    for (std::int64_t c = 0; c < grid.size(); ++c) {
        const UnitClass row = grid.locate(invert(grid.representative(UnitClass{c})));
        mat(row.index, c) = 1.0;
    }
    return OperatorMatrix(space, space, std::move(mat));
}

OperatorMatrix rep_pi(const UnitGrid& grid, const GnPoint& g) {
    const LevelParams& P = grid.params();
    if (g.a.prime() != P.prime || g.t.prime() != P.prime)
        throw ParameterMismatchError("rep_pi: point over a different prime");
    if (!g.a.in_principal_units(P.level_n)) throw DomainError("rep_pi: a is not in U_n");
    if (!g.t.in_ball(-P.cell_exponent()))
        throw DomainError("rep_pi: t is too singular for this level (|t| > p^{n+m})");

    const Space space{SpaceKind::Unit, P};
    Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
    const PadicNumber at = g.a * g.t;
    for (std::int64_t c = 0; c < grid.size(); ++c) {
        const UnitClass row = grid.locate(g.a * grid.representative(UnitClass{c}));
        const Phase ph = psi_phase(invert(grid.representative(row)) * at);
        mat(row.index, c) = phase_to_complex(ph);
    }
    return OperatorMatrix(space, space, std::move(mat));
}

OperatorMatrix omega_point(const XnGrid& grid, const XnElement& g) {
    if (!(g.params == grid.params()))
        throw ParameterMismatchError("omega_point: element from a different level");
    const UnitGrid& ug = grid.unit_grid();
    const PadicNumber& a = grid.lift_unit(g);
    const PadicNumber& t = grid.lift_gamma(g);
    const PadicNumber a2 = a * a;

    const Space space{SpaceKind::Unit, grid.params()};
    Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
    for (std::int64_t c = 0; c < ug.size(); ++c) {
        const UnitClass row = ug.locate(a2 * invert(ug.representative(UnitClass{c})));
        const Phase ph = psi_phase(phi(a * invert(ug.representative(row))) * t);
        mat(row.index, c) = phase_to_complex(ph);
    }
    return OperatorMatrix(space, space, std::move(mat));
}

OperatorMatrix quantize(const XnGrid& grid, const LcFunction& f) {
    check_space(f.space, Space{SpaceKind::Xn, grid.params()}, "quantize");
    const Space out{SpaceKind::Unit, grid.params()};
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(out.dim(), out.dim());
    const double scale = quantize_scale(grid.params()) * grid.cell_weight(); // q^n * Haar cell
    for (std::int64_t i = 0; i < grid.size(); ++i) {
        const std::complex<double> coef = scale * f.values[i];
        if (coef == 0.0) continue;
        acc += coef * omega_point(grid, grid.at(i)).matrix();
    }
    return OperatorMatrix(out, out, std::move(acc));
}

LcFunction dequantize(const XnGrid& grid, const OperatorMatrix& op) {
    check_space(op.domain(), Space{SpaceKind::Unit, grid.params()}, "dequantize");
    check_space(op.codomain(), Space{SpaceKind::Unit, grid.params()}, "dequantize");
    LcFunction f = make_zero_function(Space{SpaceKind::Xn, grid.params()});
    const Eigen::MatrixXcd a_t = op.matrix().transpose();
    for (std::int64_t i = 0; i < grid.size(); ++i) {
        const Eigen::MatrixXcd omega = omega_point(grid, grid.at(i)).matrix();
        f.values[i] = omega.cwiseProduct(a_t).sum(); // tr(Ω A)
    }
    return f;
}

std::complex<double> star_kernel(const XnGrid& grid, const XnElement& g0, const XnElement& g1,
                                 const XnElement& g2) {
    if (!(g0.params == grid.params()) || !(g1.params == grid.params()) ||
        !(g2.params == grid.params()))
        throw ParameterMismatchError("star_kernel: elements from a different level");
    const PadicNumber &a0 = grid.lift_unit(g0), &a1 = grid.lift_unit(g1), &a2 = grid.lift_unit(g2);
    const PadicNumber &t0 = grid.lift_gamma(g0), &t1 = grid.lift_gamma(g1),
                      &t2 = grid.lift_gamma(g2);
    const Phase total = psi_phase(phi(a0 * invert(a1)) * t2) +
                        psi_phase(phi(a1 * invert(a2)) * t0) +
                        psi_phase(phi(a2 * invert(a0)) * t1);
    const double q2n = static_cast<double>(checked_pow(grid.params().prime, 2 * grid.params().level_n));
    return q2n * phase_to_complex(total);
}

LcFunction star_product(const XnGrid& grid, const LcFunction& f1, const LcFunction& f2,
                        StarMethod method) {
    const Space xn{SpaceKind::Xn, grid.params()};
    check_space(f1.space, xn, "star_product");
    check_space(f2.space, xn, "star_product");

    if (method == StarMethod::HilbertSchmidt)
        return dequantize(grid, quantize(grid, f1) * quantize(grid, f2));

    // Kernel route. The double sum over the level-m grid is the full X_n^2
    // sum: translates of a level-m function by classes outside the grid leave
    // its support. Phases are exact rationals with denominator p^M, evaluated
    // through cached residues phi(a_i a_j^{-1}) mod p^M.
    const LevelParams& P = grid.params();
    const UnitGrid& ug = grid.unit_grid();
    const std::int64_t pm = P.pow_m();
    const std::int64_t pM = checked_pow(P.prime, P.cell_exponent());
    const auto roots = detail::unit_roots(pM);

    std::vector<std::int64_t> phi_res(static_cast<std::size_t>(pm * pm));
    for (std::int64_t i = 0; i < pm; ++i) {
        const PadicNumber& ai = ug.representative(UnitClass{i});
        for (std::int64_t j = 0; j < pm; ++j) {
            const PadicNumber x = phi(ai * invert(ug.representative(UnitClass{j})));
            phi_res[static_cast<std::size_t>(i * pm + j)] = x.residue(P.cell_exponent());
        }
    }
    auto res = [&](std::int64_t i, std::int64_t j) {
        return phi_res[static_cast<std::size_t>(i * pm + j)];
    };

    const double w2 = grid.cell_weight() * grid.cell_weight();
    const double q2n = static_cast<double>(checked_pow(P.prime, 2 * P.level_n));
    LcFunction out = make_zero_function(xn);
    for (std::int64_t i0 = 0; i0 < pm; ++i0)
        for (std::int64_t k0 = 0; k0 < pm; ++k0) {
            std::complex<double> acc = 0.0;
            for (std::int64_t i1 = 0; i1 < pm; ++i1)
                for (std::int64_t k1 = 0; k1 < pm; ++k1) {
                    const std::complex<double> v1 = f1.values[i1 * pm + k1];
                    if (v1 == 0.0) continue;
                    for (std::int64_t i2 = 0; i2 < pm; ++i2) {
                        const std::int64_t ra = res(i0, i1);
                        const std::int64_t rb = detail::mulmod(res(i1, i2), k0, pM);
                        const std::int64_t rc = res(i2, i0);
                        for (std::int64_t k2 = 0; k2 < pm; ++k2) {
                            const std::int64_t num =
                                (detail::mulmod(ra, k2, pM) + rb + detail::mulmod(rc, k1, pM)) % pM;
                            acc += roots[static_cast<std::size_t>(num)] * v1 *
                                   f2.values[i2 * pm + k2];
                        }
                    }
                }
            out.values[i0 * pm + k0] = q2n * w2 * acc;
        }
    return out;
}

} // namespace fuchs
