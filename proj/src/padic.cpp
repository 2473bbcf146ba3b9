#include "fuchs/padic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

namespace fuchs {

namespace {

constexpr std::int64_t kMaxPrime = 1'000'000; // keeps digit products within int64

bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

void validate_prime(std::int64_t p) {
    if (p == 2)
        throw ConfigError("p = 2 is not supported: the square and hyperbolic-sine maps on the "
                          "principal units degenerate when 2 is not a unit (dyadic exclusion)");
    if (p < 3 || p > kMaxPrime || !is_prime(p))
        throw ConfigError("prime must be an odd prime in [3, 10^6], got " + std::to_string(p));
}

using Digits = std::vector<std::int64_t>;

// Little-endian base-p digit vectors, all arithmetic modulo p^L where L is the
// vector length. Entries always lie in [0, p).

Digits int_to_digits(std::int64_t value, std::int64_t p, std::size_t len) {
    Digits d(len, 0);
    for (std::size_t i = 0; i < len && value != 0; ++i) {
        d[i] = value % p;
        value /= p;
    }
    return d;
}

Digits add_digits(const Digits& a, const Digits& b, std::int64_t p) {
    const std::size_t len = std::max(a.size(), b.size());
    Digits r(len, 0);
    std::int64_t carry = 0;
    for (std::size_t i = 0; i < len; ++i) {
        std::int64_t s = carry;
        if (i < a.size()) s += a[i];
        if (i < b.size()) s += b[i];
        r[i] = s % p;
        carry = s / p;
    }
    return r; // carry beyond p^len is dropped
}

Digits mul_digits(const Digits& a, const Digits& b, std::int64_t p, std::size_t len) {
    Digits r(len, 0);
    for (std::size_t i = 0; i < a.size() && i < len; ++i) {
        if (a[i] == 0) continue;
        std::int64_t carry = 0;
        for (std::size_t j = 0; i + j < len && (j < b.size() || carry != 0); ++j) {
            std::int64_t cur = r[i + j] + carry;
            if (j < b.size()) cur += a[i] * b[j];
            r[i + j] = cur % p;
            carry = cur / p;
        }
    }
    return r;
}

// p^len - a for a != 0 (two's-complement analogue); zero stays zero.
Digits complement_digits(const Digits& a, std::int64_t p) {
    Digits r(a.size(), 0);
    std::size_t k = 0;
    while (k < a.size() && a[k] == 0) ++k;
    if (k == a.size()) return r;
    r[k] = p - a[k];
    for (std::size_t i = k + 1; i < a.size(); ++i) r[i] = p - 1 - a[i];
    return r;
}

bool digits_equal(const Digits& a, const Digits& b, std::size_t upto) {
    for (std::size_t i = 0; i < upto; ++i) {
        const std::int64_t da = i < a.size() ? a[i] : 0;
        const std::int64_t db = i < b.size() ? b[i] : 0;
        if (da != db) return false;
    }
    return true;
}

std::int64_t mod_inverse_int(std::int64_t a, std::int64_t m) {
    std::int64_t t = 0, new_t = 1, r = m, new_r = a % m;
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (r != 1) throw ZeroDivisionError("element not invertible modulo " + std::to_string(m));
    return t < 0 ? t + m : t;
}

// Newton iteration x <- x(2 - ax) mod p^len; requires a[0] != 0.
Digits invert_digits(const Digits& a, std::int64_t p, std::size_t len) {
    Digits x(len, 0);
    x[0] = mod_inverse_int(a[0], p);
    const Digits two = int_to_digits(2, p, len);
    for (std::size_t iter = 0, reach = 1; reach < len && iter < 64; ++iter, reach *= 2) {
        Digits ax = mul_digits(a, x, p, len);
        Digits corr = add_digits(two, complement_digits(ax, p), p);
        x = mul_digits(x, corr, p, len);
    }
    return x;
}

// Square root of u ≡ 1 (mod p) by s <- (s + u/s)/2; p odd.
Digits sqrt_digits(const Digits& u, std::int64_t p, std::size_t len) {
    Digits s = int_to_digits(1, p, len);
    const Digits inv2 = invert_digits(int_to_digits(2, p, len), p, len);
    for (std::size_t iter = 0, reach = 1; reach < len && iter < 64; ++iter, reach *= 2) {
        Digits t = add_digits(s, mul_digits(u, invert_digits(s, p, len), p, len), p);
        s = mul_digits(t, inv2, p, len);
    }
    if (!digits_equal(mul_digits(s, s, p, len), u, len))
        throw DomainError("sqrt_unit iteration failed to converge (input not a square?)");
    return s;
}

std::int64_t p_adic_valuation(std::int64_t v, std::int64_t p, std::int64_t& unit_out) {
    std::int64_t val = 0;
    while (v % p == 0) {
        v /= p;
        ++val;
    }
    unit_out = v;
    return val;
}

} // namespace

std::int64_t checked_pow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (r > (std::int64_t{1} << 62) / base)
            throw ConfigError("p^" + std::to_string(exp) + " exceeds the 64-bit range");
        r *= base;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Phase

Phase::Phase(std::int64_t numerator, std::int64_t denominator) {
    if (denominator <= 0) throw DomainError("phase denominator must be positive");
    num_ = numerator % denominator;
    if (num_ < 0) num_ += denominator;
    den_ = denominator;
    const std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
    if (num_ == 0) den_ = 1;
}

Phase Phase::operator+(const Phase& other) const {
    const std::int64_t g = std::gcd(den_, other.den_);
    const std::int64_t den = den_ / g * other.den_;
    return Phase(num_ * (den / den_) + other.num_ * (den / other.den_), den);
}

Phase Phase::operator-() const { return Phase(den_ - num_, den_); }

std::string Phase::to_string() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::complex<double> phase_to_complex(const Phase& phase) {
    const double turns = static_cast<double>(phase.numerator()) / static_cast<double>(phase.denominator());
    return std::polar(1.0, 2.0 * M_PI * turns);
}

// ---------------------------------------------------------------------------
// PadicNumber

PadicNumber::PadicNumber(std::int64_t prime, int valuation, std::vector<std::int64_t> digits,
                         int abs_precision)
    : prime_(prime), valuation_(valuation), precision_(abs_precision), digits_(std::move(digits)) {
    canonicalize();
}

void PadicNumber::canonicalize() {
    // Strip leading (low-power) zeros; cap the digit window at the precision.
    std::size_t lead = 0;
    while (lead < digits_.size() && digits_[lead] == 0) ++lead;
    if (lead > 0) {
        digits_.erase(digits_.begin(), digits_.begin() + static_cast<std::ptrdiff_t>(lead));
        valuation_ += static_cast<int>(lead);
    }
    if (digits_.empty() || valuation_ >= precision_) {
        digits_.clear();
        valuation_ = precision_;
        return;
    }
    const std::size_t want = static_cast<std::size_t>(precision_ - valuation_);
    if (digits_.size() > want) digits_.resize(want);
    if (digits_.size() < want) digits_.resize(want, 0); // trailing zeros are known digits
}

PadicNumber PadicNumber::zero(std::int64_t prime, int abs_precision) {
    validate_prime(prime);
    return PadicNumber(prime, abs_precision, {}, abs_precision);
}

PadicNumber PadicNumber::from_digits(std::int64_t prime, int valuation,
                                     std::vector<std::int64_t> digits, int abs_precision) {
    validate_prime(prime);
    for (std::int64_t d : digits)
        if (d < 0 || d >= prime) throw DomainError("digit out of range [0, p)");
    return PadicNumber(prime, valuation, std::move(digits), abs_precision);
}

PadicNumber PadicNumber::from_integer(std::int64_t prime, std::int64_t value, int abs_precision) {
    validate_prime(prime);
    if (value == 0) return zero(prime, abs_precision);
    const bool negative = value < 0;
    std::int64_t mag = negative ? -value : value;
    std::int64_t unit = 0;
    const int val = static_cast<int>(p_adic_valuation(mag, prime, unit));
    if (val >= abs_precision) return zero(prime, abs_precision);
    const std::size_t len = static_cast<std::size_t>(abs_precision - val);
    Digits d = int_to_digits(unit, prime, len); // digits beyond p^N are dropped
    if (negative) d = complement_digits(d, prime);
    return PadicNumber(prime, val, std::move(d), abs_precision);
}

PadicNumber PadicNumber::from_rational(std::int64_t prime, std::int64_t num, std::int64_t den,
                                       int abs_precision) {
    validate_prime(prime);
    if (den == 0) throw ZeroDivisionError("rational with zero denominator");
    if (num == 0) return zero(prime, abs_precision);
    const bool negative = (num < 0) != (den < 0);
    std::int64_t num_mag = num < 0 ? -num : num;
    std::int64_t den_mag = den < 0 ? -den : den;
    std::int64_t num_unit = 0, den_unit = 0;
    const int val = static_cast<int>(p_adic_valuation(num_mag, prime, num_unit) -
                                     p_adic_valuation(den_mag, prime, den_unit));
    if (val >= abs_precision) return zero(prime, abs_precision);
    const std::size_t len = static_cast<std::size_t>(abs_precision - val);
    Digits d = mul_digits(int_to_digits(num_unit, prime, len),
                          invert_digits(int_to_digits(den_unit, prime, len), prime, len), prime, len);
    if (negative) d = complement_digits(d, prime);
    return PadicNumber(prime, val, std::move(d), abs_precision);
}

std::int64_t PadicNumber::digit(int power) const {
    if (power >= precision_)
        throw PrecisionError("digit at p^" + std::to_string(power) +
                             " is beyond the absolute precision p^" + std::to_string(precision_));
    if (is_zero() || power < valuation_) return 0;
    return digits_[static_cast<std::size_t>(power - valuation_)];
}

bool PadicNumber::in_principal_units(int k) const {
    if (is_zero() || valuation_ != 0) return false;
    if (digit(0) != 1) return false;
    for (int i = 1; i < k; ++i)
        if (digit(i) != 0) return false;
    return true;
}

std::int64_t PadicNumber::residue(int k) const {
    if (is_zero()) {
        if (precision_ < k) throw PrecisionError("residue mod p^k not determined");
        return 0;
    }
    if (valuation_ < 0) throw DomainError("residue of an element with negative valuation");
    if (precision_ < k) throw PrecisionError("residue mod p^k not determined");
    std::int64_t r = 0;
    for (int pos = k - 1; pos >= 0; --pos) r = r * prime_ + digit(pos);
    return r;
}

PadicNumber PadicNumber::truncated(int new_precision) const {
    if (new_precision >= precision_) return *this;
    return PadicNumber(prime_, is_zero() ? new_precision : valuation_, digits_, new_precision);
}

PadicNumber PadicNumber::operator-() const {
    if (is_zero()) return *this;
    return PadicNumber(prime_, valuation_, complement_digits(digits_, prime_), precision_);
}

PadicNumber operator+(const PadicNumber& a, const PadicNumber& b) {
    if (a.prime_ != b.prime_)
        throw ParameterMismatchError("mixing p-adic numbers over different primes");
    const int prec = std::min(a.precision_, b.precision_);
    if (a.is_zero()) return b.truncated(prec);
    if (b.is_zero()) return a.truncated(prec);
    const int val = std::min(a.valuation_, b.valuation_);
    if (val >= prec) return PadicNumber::zero(a.prime_, prec);
    const std::size_t len = static_cast<std::size_t>(prec - val);
    Digits da(len, 0), db(len, 0);
    for (std::size_t i = 0; i < len; ++i) {
        const int pos = val + static_cast<int>(i);
        da[i] = (pos >= a.valuation_ && pos < a.precision_) ? a.digit(pos) : 0;
        db[i] = (pos >= b.valuation_ && pos < b.precision_) ? b.digit(pos) : 0;
    }
    return PadicNumber(a.prime_, val, add_digits(da, db, a.prime_), prec);
}

PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) { return a + (-b); }

PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) {
    if (a.prime_ != b.prime_)
        throw ParameterMismatchError("mixing p-adic numbers over different primes");
    // |x y - x0 y0| <= max(|x0| p^{-Nb}, |y0| p^{-Na}).
    if (a.is_zero() || b.is_zero()) {
        long prec = static_cast<long>(a.valuation()) + b.precision_;
        prec = std::min(prec, static_cast<long>(b.valuation()) + a.precision_);
        prec = std::min(prec, static_cast<long>(a.precision_) + b.precision_);
        return PadicNumber::zero(a.prime_, static_cast<int>(prec));
    }
    const int val = a.valuation_ + b.valuation_;
    const int prec = std::min(a.valuation_ + b.precision_, b.valuation_ + a.precision_);
    const std::size_t len = static_cast<std::size_t>(prec - val);
    return PadicNumber(a.prime_, val, mul_digits(a.digits_, b.digits_, a.prime_, len), prec);
}

bool PadicNumber::equals(const PadicNumber& other) const {
    if (prime_ != other.prime_)
        throw ParameterMismatchError("comparing p-adic numbers over different primes");
    const int prec = std::min(precision_, other.precision_);
    const bool za = is_zero() || valuation_ >= prec;
    const bool zb = other.is_zero() || other.valuation_ >= prec;
    if (za || zb) return za && zb;
    if (valuation_ != other.valuation_) return false;
    const std::size_t upto = static_cast<std::size_t>(prec - valuation_);
    return digits_equal(digits_, other.digits_, upto);
}

AbsValue PadicNumber::abs_exact() const {
    if (is_zero()) return AbsValue{0, 1};
    if (valuation_ >= 0) return AbsValue{1, checked_pow(prime_, valuation_)};
    return AbsValue{checked_pow(prime_, -valuation_), 1};
}

double PadicNumber::abs_double() const {
    if (is_zero()) return 0.0;
    return std::pow(static_cast<double>(prime_), -static_cast<double>(valuation_));
}

std::string PadicNumber::to_string() const {
    std::ostringstream os;
    if (is_zero()) {
        os << "O(" << prime_ << "^" << precision_ << ")";
        return os.str();
    }
    bool first = true;
    int shown = 0;
    for (std::size_t i = 0; i < digits_.size() && shown < 8; ++i) {
        if (digits_[i] == 0) continue;
        if (!first) os << " + ";
        const int pos = valuation_ + static_cast<int>(i);
        if (pos == 0)
            os << digits_[i];
        else if (digits_[i] == 1)
            os << prime_ << "^" << pos;
        else
            os << digits_[i] << "*" << prime_ << "^" << pos;
        first = false;
        ++shown;
    }
    if (first) os << "0";
    os << " + O(" << prime_ << "^" << precision_ << ")";
    return os.str();
}

// ---------------------------------------------------------------------------
// Field maps

PadicNumber invert(const PadicNumber& x) {
    if (x.is_zero())
        throw ZeroDivisionError("inverting an element that is zero at its precision");
    const int val = x.valuation();
    const std::size_t len = x.digits().size(); // relative precision is preserved
    Digits inv = invert_digits(x.digits(), x.prime(), len);
    return PadicNumber::from_digits(x.prime(), -val, std::move(inv),
                                    x.precision() - 2 * val);
}

PadicNumber sqrt_unit(const PadicNumber& u) {
    if (!u.in_principal_units(1))
        throw DomainError("sqrt_unit requires a unit congruent to 1 mod p");
    Digits s = sqrt_digits(u.digits(), u.prime(), u.digits().size());
    return PadicNumber::from_digits(u.prime(), 0, std::move(s), u.precision());
}

PadicNumber phi(const PadicNumber& a) {
    if (!a.in_principal_units(1))
        throw DomainError("phi requires a unit congruent to 1 mod p");
    return a - invert(a);
}

PadicNumber phi_inv(const PadicNumber& x) {
    if (!x.in_ball(1))
        throw DomainError("phi_inv requires |x| <= 1/p");
    const PadicNumber half = PadicNumber::from_rational(x.prime(), 1, 2, x.precision());
    const PadicNumber one = PadicNumber::from_integer(x.prime(), 1, x.precision());
    const PadicNumber q = x * half;
    return q + sqrt_unit(one + q * q);
}

Phase psi_phase(const PadicNumber& x) {
    if (x.precision() < 0)
        throw PrecisionError("psi_phase: negative-power digits are not fully determined");
    if (x.is_zero() || x.valuation() >= 0) return Phase::zero();
    const int val = x.valuation();
    const std::int64_t den = checked_pow(x.prime(), -val);
    std::int64_t num = 0;
    for (int pos = -1; pos >= val; --pos) num = num * x.prime() + x.digit(pos);
    return Phase(num, den);
}

} // namespace fuchs
