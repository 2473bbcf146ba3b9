#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "fuchs/errors.hpp"

namespace fuchs {

// p^exp for small integers, with an overflow guard.
std::int64_t checked_pow(std::int64_t base, int exp);

// Exact ultrametric absolute value as a reduced fraction num/den (both p-powers
// or 1; {0,1} encodes 0).
struct AbsValue {
    std::int64_t num = 1;
    std::int64_t den = 1;
    bool operator==(const AbsValue&) const = default;
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Element of Q/Z with p-power denominator: the exact value of the character
// Psi before any complex evaluation. Always kept reduced with 0 <= num < den.
class Phase {
public:
    Phase() : num_(0), den_(1) {}
    Phase(std::int64_t numerator, std::int64_t denominator);

    static Phase zero() { return Phase(); }

    std::int64_t numerator() const { return num_; }
    std::int64_t denominator() const { return den_; }
    bool is_zero() const { return num_ == 0; }

    Phase operator+(const Phase& other) const;
    Phase operator-() const;
    Phase operator-(const Phase& other) const { return *this + (-other); }

    bool operator==(const Phase&) const = default;

    std::string to_string() const;

private:
    std::int64_t num_; // 0 <= num_ < den_
    std::int64_t den_; // positive; a prime power (or 1) in all library uses
};

// e^{2*pi*i*phase} in double precision.
std::complex<double> phase_to_complex(const Phase& phase);

// Truncated p-adic number: value = p^v * (d_0 + d_1 p + ...), known modulo
// p^N where N is the absolute precision. Canonical form stores exactly
// N - v digits with d_0 != 0; the zero-at-precision element stores none.
// All values are immutable; every operation returns a fresh value and tracks
// the worst-case precision of its operands.
class PadicNumber {
public:
    static PadicNumber zero(std::int64_t prime, int abs_precision);
    static PadicNumber from_integer(std::int64_t prime, std::int64_t value, int abs_precision);
    static PadicNumber from_rational(std::int64_t prime, std::int64_t num, std::int64_t den,
                                     int abs_precision);
    // digits are base-p, least significant first, relative to p^valuation.
    static PadicNumber from_digits(std::int64_t prime, int valuation,
                                   std::vector<std::int64_t> digits, int abs_precision);

    std::int64_t prime() const { return prime_; }
    bool is_zero() const { return digits_.empty(); }
    // For the zero-at-precision element this returns the precision (a lower
    // bound on the true valuation).
    int valuation() const { return is_zero() ? precision_ : valuation_; }
    int precision() const { return precision_; }

    // Digit at the given power of p: 0 below the valuation, PrecisionError at
    // or beyond the absolute precision.
    std::int64_t digit(int power) const;
    const std::vector<std::int64_t>& digits() const { return digits_; }

    bool is_unit() const { return !is_zero() && valuation_ == 0; }
    // x ≡ 1 (mod p^k), i.e. membership in U_k. Requires precision >= k.
    bool in_principal_units(int k) const;
    // |x|_k <= p^{-k}  (for zero-at-precision: certified up to the precision).
    bool in_ball(int k) const { return valuation() >= k; }

    // x mod p^k as an integer in [0, p^k). Requires valuation >= 0 (or zero)
    // and precision >= k.
    std::int64_t residue(int k) const;

    PadicNumber truncated(int new_precision) const;

    PadicNumber operator-() const;
    friend PadicNumber operator+(const PadicNumber& a, const PadicNumber& b);
    friend PadicNumber operator-(const PadicNumber& a, const PadicNumber& b);
    friend PadicNumber operator*(const PadicNumber& a, const PadicNumber& b);

    // Equality at the common absolute precision.
    bool equals(const PadicNumber& other) const;
    bool operator==(const PadicNumber& other) const { return equals(other); }
    bool operator!=(const PadicNumber& other) const { return !equals(other); }

    AbsValue abs_exact() const;
    double abs_double() const;

    std::string to_string() const;

private:
    PadicNumber(std::int64_t prime, int valuation, std::vector<std::int64_t> digits,
                int abs_precision);
    void canonicalize();

    std::int64_t prime_;
    int valuation_;   // meaningful only when digits_ is nonempty
    int precision_;   // absolute precision N
    std::vector<std::int64_t> digits_;
};

// Multiplicative inverse. The result is known modulo p^{N - 2v}.
PadicNumber invert(const PadicNumber& x);

// The unique square root of u in U_1 (Hensel lifting seeded at 1). Maps U_n
// into U_n for every n >= 1.
PadicNumber sqrt_unit(const PadicNumber& u);

// phi(a) = a - a^{-1}. Maps U_n onto p^n Z_p isometrically.
PadicNumber phi(const PadicNumber& a);

// The inverse of phi on U_1: a = x/2 + (1 + x^2/4)^{1/2}. Requires |x| <= 1/p.
PadicNumber phi_inv(const PadicNumber& x);

// Fractional part sum_{j<0} d_j p^j of x as an exact element of Q/Z. Zero on
// Z_p; requires the negative-power digits to be determined (precision >= 0).
Phase psi_phase(const PadicNumber& x);

} // namespace fuchs
