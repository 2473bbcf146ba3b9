#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "fuchs/grids.hpp"

namespace fuchs {

// A point of U_n x p^n Z_p x U_n x p^n Z_p, the domain of the change of
// variables Ξ through which the twist factorizes.
struct XiPoint {
    PadicNumber a1, x1, a2, x2;
};

// DomainError unless a1, a2 in U_n and |x1|, |x2| <= p^{-n}.
void validate_xi_point(const LevelParams& params, const XiPoint& p);

// Ξ(a1,x1,a2,x2) = (φ^{-1}(a2^{-1}x2) a1, x1, φ^{-1}(-a1^{-1}x1) a2, x2).
XiPoint xi_forward(const XiPoint& p);

// Closed-form inverse (nested square roots, admissible branch); exact
// two-sided inverse of xi_forward at the working precision.
XiPoint xi_inverse(const XiPoint& p);

// The Jacobian of Ξ:
//   φ^{-1}(-a1^{-1}x1) φ^{-1}(a2^{-1}x2)
//     + a1^{-1}a2^{-1} (1 + φ^{-1}(-a1^{-1}x1)^{-2})^{-1} (1 + φ^{-1}(a2^{-1}x2)^{-2})^{-1} x1 x2,
// a unit plus an element of p^{2n} Z_p; its absolute value is always 1.
PadicNumber xi_jacobian(const XiPoint& p);
AbsValue xi_jacobian_abs(const XiPoint& p);

// Root admissibility for the reduced quadratic system in the homogeneous
// variables (X1, X2): the candidate U_± = 1 + X1X2/2 + X1²/2 ± X1 S with
// S = (1 + ((X1+X2)/2)²)^{1/2} must satisfy
//   X1 U = ((U + X2²/4)^{1/2} - X2/2)(U - 1)
// with the principal-unit square root. U_+ always does; U_- fails whenever
// X1 != 0.
bool xi_branch_admissible(const PadicNumber& x_first, const PadicNumber& x_second,
                          bool plus_branch);

enum class XiDirection { Forward, Inverse };

// Evaluates Ξ (or its inverse) at every cell center of the level-m
// (U, x, U, x) grid, maps each image to its containing cell, and returns the
// induced map, verified to be a bijection of the p^{4m} cells.
// Flat index layout: ((iu1 * p^m + ix1) * p^m + iu2) * p^m + ix2.
std::vector<std::int64_t> induced_grid_permutation(const LevelParams& params, XiDirection dir);

// ---------------------------------------------------------------------------
// The dual 2-cocycle F

enum class TwistMethod { Direct, Factorized };

// F = q^{2n} Σ_{[g1],[g2]} Ψ(φ(a1)t2 - φ(a2)t1) λ_{[g1]^{-1}} ⊗ λ_{[g2]^{-1}}
// at level m, kept as its coefficient function c on the X_n² grid together
// with the dense matrix on L²(X_n x X_n). Rows and columns follow the
// canonical grid order.
struct TwistOperator {
    LevelParams params;
    TwistMethod method;
    Eigen::MatrixXcd coeff; // c(g1,g2); row = flat(g1), column = flat(g2)
    Eigen::MatrixXcd mat;   // p^{2m}·p^{2m} square matrix on L²(X_n²)
};

// Exact-phase coefficient function of the direct construction:
// c(g1,g2) = q^{2n} w^2 Ψ(φ(a1)t2 - φ(a2)t1) on the X_n² grid. Always a
// p^{2m} x p^{2m} matrix, independent of the dense-matrix budget.
Eigen::MatrixXcd twist_coefficients(const XnGrid& grid);

// direct: assemble the weighted sum of tensor-product left translations with
// exact phase coefficients. factorized: conjugate the Ξ cell permutation by
// the two partial Gamma-Fourier transforms. Both yield the same operator.
TwistOperator build_twist(const XnGrid& grid, TwistMethod method, std::int64_t budget_mb);

// Matrix of F* = q^{2n} Σ conj(Ψ)(φ(a1)t2 - φ(a2)t1) λ_{[g1]} ⊗ λ_{[g2]},
// built from the conjugated coefficients; equals mat.adjoint().
Eigen::MatrixXcd twist_adjoint_matrix(const XnGrid& grid, const TwistOperator& twist);

// max(|F*F - I|_F, |F F* - I|_F) / |I|_F.
double unitarity_residual(const TwistOperator& twist);

// Unitarity certificate that avoids materializing F: the Ξ cell map is an
// exact permutation and the scaled partial Fourier transform is unitary, so
// the factorized product is unitary at any resolution.
struct StructuredUnitarityEvidence {
    bool permutation_bijective = false;
    double fourier_residual = 0.0; // |p^n w G†G - I|_F / |I|_F
    double residual() const { return permutation_bijective ? fourier_residual : 1.0; }
};
StructuredUnitarityEvidence structured_unitarity(const LevelParams& params);

// |(1⊗F)(ι⊗Δ̂)F - (F⊗1)(Δ̂⊗ι)F|_F / |(1⊗F)(ι⊗Δ̂)F|_F on L²(X_n³),
// with the lifts defined on the coefficient function:
//   (ι⊗Δ̂)F = Σ c(g1,g2) λ_{g1^{-1}} ⊗ λ_{g2^{-1}} ⊗ λ_{g2^{-1}},
//   (Δ̂⊗ι)F = Σ c(g1,g2) λ_{g1^{-1}} ⊗ λ_{g1^{-1}} ⊗ λ_{g2^{-1}}.
double cocycle_residual(const XnGrid& grid, const TwistOperator& twist, std::int64_t budget_mb);

// Same residual computed in the group algebra of X_n³: both sides of the
// relation are convolutions of the coefficient function with itself,
//   C_L(k1,k2,k3) = Σ_h c(h^{-1}k2, h^{-1}k3) c(k1, h),
//   C_R(k1,k2,k3) = Σ_h c(h^{-1}k1, h^{-1}k2) c(h, k3),
// and since every matrix entry of the lifted operators carries exactly one
// coefficient, the relative l² residual of C_L - C_R equals the relative
// Frobenius residual of the dense matrices. Needs O(p^{6m}) memory instead
// of O(p^{12m}).
double cocycle_residual_coefficients(const XnGrid& grid, const TwistOperator& twist,
                                     std::int64_t budget_mb);

// OutOfBudgetError if the allocation would exceed budget_mb (<= 0: unlimited).
void ensure_budget(std::int64_t bytes, std::int64_t budget_mb, const char* what);

} // namespace fuchs
