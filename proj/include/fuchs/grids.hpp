#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "fuchs/padic.hpp"

namespace fuchs {

// Parameters of one truncated model: the field Q_p, the unit-group level n
// (U_n = 1 + p^n Z_p) and the resolution level m. Functions at level m are
// constant on U_{n+m}-cosets and supported on Gamma_n classes of valuation
// >= -(n+m); this truncation law makes every integral in the calculus an
// exact finite sum. All p-adic arithmetic runs at absolute precision
// n + m + guard.
struct LevelParams {
    std::int64_t prime = 3;
    int level_n = 1;      // n >= 1
    int resolution_m = 1; // m >= 1
    int guard = 4;

    void validate() const; // ConfigError on violation
    int working_precision() const { return level_n + resolution_m + guard; }
    int cell_exponent() const { return level_n + resolution_m; } // M = n + m
    std::int64_t pow_m() const { return checked_pow(prime, resolution_m); }
    double cell_weight() const; // Haar weight p^{-(n+m)} of one cell

    bool operator==(const LevelParams&) const = default;
};

// Coset a*U_{n+m} in U_n, stored as the index u with canonical representative
// 1 + p^n u, 0 <= u < p^m.
struct UnitClass {
    std::int64_t index = 0;
    bool operator==(const UnitClass&) const = default;
};

// Class t + p^{-n} Z_p with canonical representative j p^{-(n+m)}, 0 <= j < p^m.
struct GammaClass {
    std::int64_t index = 0;
    bool operator==(const GammaClass&) const = default;
};

// A point of the truncated phase-space group X_n = U_n ⋉ Gamma_n.
struct XnElement {
    LevelParams params;
    UnitClass unit;
    GammaClass gamma;
    bool operator==(const XnElement&) const = default;
};

// Group law (a,[t])(a',[t']) = (aa', [a'^{-1} t + t']) on canonical classes.
XnElement xn_mul(const XnElement& g, const XnElement& h);
// Inverse (a^{-1}, [-a t]).
XnElement xn_inv(const XnElement& g);
XnElement xn_identity(const LevelParams& params);

// Enumerations of the level-m cells, with canonical representatives at the
// working precision. Enumeration order is part of the stable output contract:
// cells are listed by ascending index, i.e. lexicographically in their digit
// strings written most-significant-first.

class UnitGrid {
public:
    explicit UnitGrid(const LevelParams& params);
    const LevelParams& params() const { return params_; }
    std::int64_t size() const { return static_cast<std::int64_t>(reps_.size()); }
    double cell_weight() const { return params_.cell_weight(); }
    const PadicNumber& representative(UnitClass c) const;
    UnitClass locate(const PadicNumber& a) const; // DomainError if a is not in U_n

private:
    LevelParams params_;
    std::vector<PadicNumber> reps_;
};

class GammaGrid {
public:
    explicit GammaGrid(const LevelParams& params);
    const LevelParams& params() const { return params_; }
    std::int64_t size() const { return static_cast<std::int64_t>(reps_.size()); }
    const PadicNumber& representative(GammaClass c) const;
    GammaClass locate(const PadicNumber& t) const; // DomainError if valuation < -(n+m)

private:
    LevelParams params_;
    std::vector<PadicNumber> reps_;
};

// Cells of the additive ball p^n Z_p at scale p^{-(n+m)}; centers p^n c.
class BallGrid {
public:
    explicit BallGrid(const LevelParams& params);
    const LevelParams& params() const { return params_; }
    std::int64_t size() const { return static_cast<std::int64_t>(reps_.size()); }
    double cell_weight() const { return params_.cell_weight(); }
    const PadicNumber& representative(std::int64_t c) const;
    std::int64_t locate(const PadicNumber& x) const; // DomainError if |x| > p^{-n}

private:
    LevelParams params_;
    std::vector<PadicNumber> reps_;
};

class XnGrid {
public:
    explicit XnGrid(const LevelParams& params);
    const LevelParams& params() const { return params_; }
    const UnitGrid& unit_grid() const { return unit_; }
    const GammaGrid& gamma_grid() const { return gamma_; }
    std::int64_t size() const { return unit_.size() * gamma_.size(); } // p^{2m}
    double cell_weight() const { return params_.cell_weight(); }

    XnElement element(std::int64_t unit_index, std::int64_t gamma_index) const;
    std::int64_t flat(const XnElement& g) const; // unit-major index
    XnElement at(std::int64_t flat_index) const;

    // Canonical lift (a, t) of a grid class to the covariance group G_n.
    const PadicNumber& lift_unit(const XnElement& g) const;
    const PadicNumber& lift_gamma(const XnElement& g) const;

    // Class of an arbitrary point (a, t) with a in U_n and |t| <= p^{n+m}.
    XnElement locate(const PadicNumber& a, const PadicNumber& t) const;

private:
    LevelParams params_;
    UnitGrid unit_;
    GammaGrid gamma_;
};

// ---------------------------------------------------------------------------
// Function spaces

enum class SpaceKind { Unit, Gamma, Ball, Xn, XnPair, XnTriple, XiDomain };

// A finite-dimensional model space: which grid, at which parameters. The cell
// weight encodes the measure (Haar weight per cell on U_n / p^n Z_p factors,
// counting weight 1 on Gamma_n factors).
struct Space {
    SpaceKind kind;
    LevelParams params;

    std::int64_t dim() const;
    double cell_weight() const;
    bool operator==(const Space&) const = default;
};

// Complex-valued function on a grid together with its per-cell measure weight;
// the finite model of the Bruhat space D at level m.
struct LcFunction {
    Space space;
    Eigen::VectorXcd values;
};

LcFunction make_zero_function(const Space& space);

std::complex<double> inner_product(const LcFunction& f, const LcFunction& g);
double l2_norm(const LcFunction& f);

// Exact Riemann sum: cell_weight * sum of values (Haar integral on U_n and
// p^n Z_p grids, counting sum on Gamma_n, the product measure on X_n).
std::complex<double> haar_integral(const LcFunction& f);

// Character matrix G with G(c, j) = Psi(x_c t_j); the Fourier transform on
// Gamma_n at level m and its inverse are built from it.
Eigen::MatrixXcd gamma_character_matrix(const LevelParams& params);

// (F f)(x) = sum_[t] f([t]) Psi(x t), evaluated at the ball centers.
LcFunction fourier_gamma(const LcFunction& f);
// f([t]) = p^n * integral of g(x) conj(Psi(x t)) dx; exact two-sided inverse.
LcFunction fourier_gamma_inv(const LcFunction& g);

// Left regular representation: (lambda_g f)(x) = f(g^{-1} x).
LcFunction left_translate(const XnGrid& grid, const XnElement& g, const LcFunction& f);
// Same for a non-grid lift (a, t) acting through its class.
LcFunction left_translate(const XnGrid& grid, const PadicNumber& a, const PadicNumber& t,
                          const LcFunction& f);

// Pullbacks along the structure maps, used by the substitution checks.
LcFunction pullback_square(const UnitGrid& grid, const LcFunction& f);        // f ∘ σ
LcFunction pullback_phi(const UnitGrid& ugrid, const BallGrid& bgrid,
                        const LcFunction& h); // h ∘ φ on the unit grid

} // namespace fuchs
