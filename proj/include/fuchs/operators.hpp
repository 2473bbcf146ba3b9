#pragma once

#include <Eigen/Dense>
#include <complex>

#include "fuchs/grids.hpp"

namespace fuchs {

// A point (a, t) of the covariance group G_n = U_n ⋉ Q_p; t may be any
// element with |t| <= p^{n+m} (representable at the level), not only a grid
// representative.
struct GnPoint {
    PadicNumber a;
    PadicNumber t;
};

// Dense complex matrix acting between model spaces, written in the
// orthonormal basis of normalized cell indicators p^{(n+m)/2} 1_cell (weight-1
// indicators on Gamma factors). With this basis unitarity is the plain matrix
// condition.
class OperatorMatrix {
public:
    OperatorMatrix(Space domain, Space codomain, Eigen::MatrixXcd mat);
    static OperatorMatrix identity(const Space& space);

    const Space& domain() const { return domain_; }
    const Space& codomain() const { return codomain_; }
    const Eigen::MatrixXcd& matrix() const { return mat_; }

    OperatorMatrix adjoint() const;
    OperatorMatrix operator*(const OperatorMatrix& rhs) const; // composition
    OperatorMatrix operator+(const OperatorMatrix& rhs) const;
    OperatorMatrix operator-(const OperatorMatrix& rhs) const;
    friend OperatorMatrix operator*(std::complex<double> scalar, const OperatorMatrix& op);

    LcFunction apply(const LcFunction& f) const;
    double frobenius_norm() const { return mat_.norm(); }

private:
    Space domain_, codomain_;
    Eigen::MatrixXcd mat_;
};

// Hilbert-Schmidt pairing on operators over L²(U_n), weighted by the formal
// degree of pi: <A,B> = q^{-n} tr(A†B). The quantization map is an isometry
// of L²(X_n) onto this space.
std::complex<double> hs_inner_product(const OperatorMatrix& a, const OperatorMatrix& b);

// The symmetry Σφ(a) = φ(a^{-1}) (group-inversion operator on L²(U_n)).
OperatorMatrix symmetry_operator(const UnitGrid& grid);

// π(a,t)φ(a0) = Ψ(a0^{-1} a t) φ(a^{-1} a0); unitary, and a homomorphism on
// representable points.
OperatorMatrix rep_pi(const UnitGrid& grid, const GnPoint& g);

// Ω([g])φ(a0) = Ψ(φ(a a0^{-1}) t) φ(a² a0^{-1}); equals π(g) Σ π(g)* for any
// lift of [g], independent of the lift.
OperatorMatrix omega_point(const XnGrid& grid, const XnElement& g);

// 𝛀(f) = q^n Σ_[t] ∫ f(a,[t]) Ω([g]) da as an exact finite sum.
OperatorMatrix quantize(const XnGrid& grid, const LcFunction& f);

// Adjoint of quantize; dequantize(A)([g]) = tr(Ω([g]) A).
LcFunction dequantize(const XnGrid& grid, const OperatorMatrix& op);

// Three-point kernel K of the star product:
// K(g0,g1,g2) = q^{2n} Ψ(φ(a0 a1^{-1}) t2 + φ(a1 a2^{-1}) t0 + φ(a2 a0^{-1}) t1).
std::complex<double> star_kernel(const XnGrid& grid, const XnElement& g0, const XnElement& g1,
                                 const XnElement& g2);

enum class StarMethod { Kernel, HilbertSchmidt };

// f1 ⋆ f2, either through the kernel double sum or through
// 𝛀*(𝛀(f1)𝛀(f2)); the two routes agree and are checked against each other.
LcFunction star_product(const XnGrid& grid, const LcFunction& f1, const LcFunction& f2,
                        StarMethod method);

} // namespace fuchs
