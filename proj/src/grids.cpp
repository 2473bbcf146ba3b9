#include "fuchs/grids.hpp"

#include <cmath>
#include <string>

namespace fuchs {

namespace {

bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
    std::int64_t t = 0, new_t = 1, r = m, new_r = ((a % m) + m) % m;
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        const std::int64_t tmp_t = t - q * new_t;
        t = new_t;
        new_t = tmp_t;
        const std::int64_t tmp_r = r - q * new_r;
        r = new_r;
        new_r = tmp_r;
    }
    if (r != 1) throw DomainError("not invertible mod " + std::to_string(m));
    return t < 0 ? t + m : t;
}

void check_same_params(const LevelParams& a, const LevelParams& b, const char* what) {
    if (!(a == b))
        throw ParameterMismatchError(std::string(what) + ": operands built over different (p, n, m)");
}

// Residue of the canonical unit representative 1 + p^n u modulo p^m.
std::int64_t unit_value_mod_pm(const LevelParams& P, std::int64_t u) {
    const std::int64_t pm = P.pow_m();
    const std::int64_t pn = P.level_n >= P.resolution_m
                                ? 0
                                : checked_pow(P.prime, P.level_n) % pm;
    return (1 + pn * (u % pm)) % pm;
}

} // namespace

void LevelParams::validate() const {
    if (prime == 2)
        throw ConfigError("p = 2 is rejected: the construction requires 2 to be a unit, which "
                          "excludes dyadic fields");
    if (prime < 3 || !is_prime(prime))
        throw ConfigError("prime must be an odd prime, got " + std::to_string(prime));
    if (level_n < 1) throw ConfigError("level n must be >= 1");
    if (resolution_m < 1) throw ConfigError("resolution m must be >= 1");
    if (guard < 0) throw ConfigError("guard digits must be >= 0");
    checked_pow(prime, 4 * resolution_m); // the largest enumerated grid must be indexable
}

double LevelParams::cell_weight() const {
    return std::pow(static_cast<double>(prime), -static_cast<double>(cell_exponent()));
}

// ---------------------------------------------------------------------------
// Group operations on canonical classes (integer arithmetic mod p^m). The
// level-m truncation is closed under these: unit products are taken mod
// U_{n+m} and the Gamma digits never drop below -(n+m) under unit scaling.

XnElement xn_identity(const LevelParams& params) {
    return XnElement{params, UnitClass{0}, GammaClass{0}};
}

XnElement xn_mul(const XnElement& g, const XnElement& h) {
    check_same_params(g.params, h.params, "xn_mul");
    const LevelParams& P = g.params;
    const std::int64_t pm = P.pow_m();
    const std::int64_t pn = P.level_n >= P.resolution_m ? 0 : checked_pow(P.prime, P.level_n) % pm;
    // (1+p^n a)(1+p^n b) = 1 + p^n (a + b + p^n a b)
    const std::int64_t a = g.unit.index, b = h.unit.index;
    const std::int64_t unit = (a + b + ((pn * ((a * b) % pm)) % pm)) % pm;
    // [a'^{-1} t + t'] where a' is h's unit
    const std::int64_t hinv = mod_inverse(unit_value_mod_pm(P, b), pm);
    const std::int64_t gamma = ((hinv * (g.gamma.index % pm)) % pm + h.gamma.index) % pm;
    return XnElement{P, UnitClass{unit}, GammaClass{gamma}};
}

XnElement xn_inv(const XnElement& g) {
    const LevelParams& P = g.params;
    const std::int64_t pm = P.pow_m();
    const std::int64_t pn = P.level_n >= P.resolution_m ? 0 : checked_pow(P.prime, P.level_n) % pm;
    // w with u + w + p^n u w ≡ 0 (mod p^m)
    const std::int64_t u = g.unit.index;
    const std::int64_t w =
        ((pm - u % pm) % pm * mod_inverse((1 + pn * (u % pm)) % pm, pm)) % pm;
    // [-a t]
    const std::int64_t a_val = unit_value_mod_pm(P, u);
    const std::int64_t gamma = (pm - (a_val * (g.gamma.index % pm)) % pm) % pm;
    return XnElement{P, UnitClass{w}, GammaClass{gamma}};
}

// ---------------------------------------------------------------------------
// Grids

UnitGrid::UnitGrid(const LevelParams& params) : params_(params) {
    params_.validate();
    const std::int64_t size = params_.pow_m();
    const std::int64_t pn = checked_pow(params_.prime, params_.level_n);
    const int N = params_.working_precision();
    reps_.reserve(static_cast<std::size_t>(size));
    for (std::int64_t u = 0; u < size; ++u)
        reps_.push_back(PadicNumber::from_integer(params_.prime, 1 + pn * u, N));
}

const PadicNumber& UnitGrid::representative(UnitClass c) const {
    return reps_.at(static_cast<std::size_t>(c.index));
}

UnitClass UnitGrid::locate(const PadicNumber& a) const {
    if (a.prime() != params_.prime)
        throw ParameterMismatchError("locate: element over a different prime");
    if (!a.in_principal_units(params_.level_n))
        throw DomainError("locate: element is not in U_n");
    std::int64_t idx = 0;
    for (int pos = params_.cell_exponent() - 1; pos >= params_.level_n; --pos)
        idx = idx * params_.prime + a.digit(pos);
    return UnitClass{idx};
}

GammaGrid::GammaGrid(const LevelParams& params) : params_(params) {
    params_.validate();
    const std::int64_t size = params_.pow_m();
    const std::int64_t pM = checked_pow(params_.prime, params_.cell_exponent());
    const int N = params_.working_precision();
    reps_.reserve(static_cast<std::size_t>(size));
    for (std::int64_t j = 0; j < size; ++j)
        reps_.push_back(PadicNumber::from_rational(params_.prime, j, pM, N));
}

const PadicNumber& GammaGrid::representative(GammaClass c) const {
    return reps_.at(static_cast<std::size_t>(c.index));
}

GammaClass GammaGrid::locate(const PadicNumber& t) const {
    if (t.prime() != params_.prime)
        throw ParameterMismatchError("locate: element over a different prime");
    const int M = params_.cell_exponent();
    if (!t.in_ball(-M))
        throw DomainError("locate: class has valuation below -(n+m), not representable at level m");
    // digits at positions -n-1 .. -M, most significant first, matching the
    // representative j = sum_i d_{-M+i} p^i
    std::int64_t idx = 0;
    for (int pos = -params_.level_n - 1; pos >= -M; --pos)
        idx = idx * params_.prime + t.digit(pos);
    return GammaClass{idx};
}

BallGrid::BallGrid(const LevelParams& params) : params_(params) {
    params_.validate();
    const std::int64_t size = params_.pow_m();
    const std::int64_t pn = checked_pow(params_.prime, params_.level_n);
    const int N = params_.working_precision();
    reps_.reserve(static_cast<std::size_t>(size));
    for (std::int64_t c = 0; c < size; ++c)
        reps_.push_back(PadicNumber::from_integer(params_.prime, pn * c, N));
}

const PadicNumber& BallGrid::representative(std::int64_t c) const {
    return reps_.at(static_cast<std::size_t>(c));
}

std::int64_t BallGrid::locate(const PadicNumber& x) const {
    if (x.prime() != params_.prime)
        throw ParameterMismatchError("locate: element over a different prime");
    if (!x.in_ball(params_.level_n))
        throw DomainError("locate: element is not in p^n Z_p");
    std::int64_t idx = 0;
    for (int pos = params_.cell_exponent() - 1; pos >= params_.level_n; --pos)
        idx = idx * params_.prime + x.digit(pos);
    return idx;
}

XnGrid::XnGrid(const LevelParams& params)
    : params_(params), unit_(params), gamma_(params) {}

XnElement XnGrid::element(std::int64_t unit_index, std::int64_t gamma_index) const {
    return XnElement{params_, UnitClass{unit_index}, GammaClass{gamma_index}};
}

std::int64_t XnGrid::flat(const XnElement& g) const {
    check_same_params(g.params, params_, "flat");
    return g.unit.index * gamma_.size() + g.gamma.index;
}

XnElement XnGrid::at(std::int64_t flat_index) const {
    const std::int64_t pm = gamma_.size();
    return element(flat_index / pm, flat_index % pm);
}

const PadicNumber& XnGrid::lift_unit(const XnElement& g) const {
    return unit_.representative(g.unit);
}

const PadicNumber& XnGrid::lift_gamma(const XnElement& g) const {
    return gamma_.representative(g.gamma);
}

XnElement XnGrid::locate(const PadicNumber& a, const PadicNumber& t) const {
    return XnElement{params_, unit_.locate(a), gamma_.locate(t)};
}

// ---------------------------------------------------------------------------
// Spaces and functions

std::int64_t Space::dim() const {
    const std::int64_t pm = params.pow_m();
    switch (kind) {
        case SpaceKind::Unit:
        case SpaceKind::Gamma:
        case SpaceKind::Ball: return pm;
        case SpaceKind::Xn: return pm * pm;
        case SpaceKind::XnPair:
        case SpaceKind::XiDomain: return checked_pow(params.prime, 4 * params.resolution_m);
        case SpaceKind::XnTriple: return checked_pow(params.prime, 6 * params.resolution_m);
    }
    throw ConfigError("unknown space kind");
}

double Space::cell_weight() const {
    const double w = params.cell_weight();
    switch (kind) {
        case SpaceKind::Unit:
        case SpaceKind::Ball: return w;
        case SpaceKind::Gamma: return 1.0;
        case SpaceKind::Xn: return w;          // Haar on U_n x counting on Gamma_n
        case SpaceKind::XnPair: return w * w;
        case SpaceKind::XnTriple: return w * w * w;
        case SpaceKind::XiDomain: return w * w * w * w; // four Haar factors
    }
    throw ConfigError("unknown space kind");
}

LcFunction make_zero_function(const Space& space) {
    return LcFunction{space, Eigen::VectorXcd::Zero(space.dim())};
}

std::complex<double> inner_product(const LcFunction& f, const LcFunction& g) {
    if (!(f.space == g.space))
        throw ParameterMismatchError("inner_product: functions live on different spaces");
    return f.space.cell_weight() * f.values.dot(g.values); // conjugates the first argument
}

double l2_norm(const LcFunction& f) {
    return std::sqrt(f.space.cell_weight()) * f.values.norm();
}

std::complex<double> haar_integral(const LcFunction& f) {
    return f.space.cell_weight() * f.values.sum();
}

Eigen::MatrixXcd gamma_character_matrix(const LevelParams& params) {
    const BallGrid ball(params);
    const GammaGrid gamma(params);
    const std::int64_t pm = params.pow_m();
    Eigen::MatrixXcd G(pm, pm);
    for (std::int64_t c = 0; c < pm; ++c)
        for (std::int64_t j = 0; j < pm; ++j)
            G(c, j) = phase_to_complex(
                psi_phase(ball.representative(c) * gamma.representative(GammaClass{j})));
    return G;
}

LcFunction fourier_gamma(const LcFunction& f) {
    if (f.space.kind != SpaceKind::Gamma)
        throw ParameterMismatchError("fourier_gamma expects a function on the Gamma_n grid");
    const Eigen::MatrixXcd G = gamma_character_matrix(f.space.params);
    return LcFunction{Space{SpaceKind::Ball, f.space.params}, G * f.values};
}

LcFunction fourier_gamma_inv(const LcFunction& g) {
    if (g.space.kind != SpaceKind::Ball)
        throw ParameterMismatchError("fourier_gamma_inv expects a function on the p^n Z_p grid");
    const LevelParams& P = g.space.params;
    const Eigen::MatrixXcd G = gamma_character_matrix(P);
    const double scale =
        static_cast<double>(checked_pow(P.prime, P.level_n)) * P.cell_weight(); // p^n * p^{-(n+m)}
    return LcFunction{Space{SpaceKind::Gamma, P}, scale * (G.adjoint() * g.values)};
}

LcFunction left_translate(const XnGrid& grid, const XnElement& g, const LcFunction& f) {
    if (f.space.kind != SpaceKind::Xn || !(f.space.params == grid.params()))
        throw ParameterMismatchError("left_translate expects a function on the X_n grid");
    const XnElement ginv = xn_inv(g);
    LcFunction out = make_zero_function(f.space);
    for (std::int64_t i = 0; i < grid.size(); ++i)
        out.values[i] = f.values[grid.flat(xn_mul(ginv, grid.at(i)))];
    return out;
}

LcFunction left_translate(const XnGrid& grid, const PadicNumber& a, const PadicNumber& t,
                          const LcFunction& f) {
    if (f.space.kind != SpaceKind::Xn || !(f.space.params == grid.params()))
        throw ParameterMismatchError("left_translate expects a function on the X_n grid");
    // g^{-1} = (a^{-1}, -a t); then g^{-1} (a_x, t_x) = (a^{-1} a_x, [a_x^{-1}(-a t) + t_x]).
    const PadicNumber a_inv = invert(a);
    const PadicNumber minus_at = -(a * t);
    LcFunction out = make_zero_function(f.space);
    for (std::int64_t i = 0; i < grid.size(); ++i) {
        const XnElement x = grid.at(i);
        const PadicNumber& ax = grid.lift_unit(x);
        const PadicNumber& tx = grid.lift_gamma(x);
        const XnElement y = grid.locate(a_inv * ax, invert(ax) * minus_at + tx);
        out.values[i] = f.values[grid.flat(y)];
    }
    return out;
}

LcFunction pullback_square(const UnitGrid& grid, const LcFunction& f) {
    if (f.space.kind != SpaceKind::Unit || !(f.space.params == grid.params()))
        throw ParameterMismatchError("pullback_square expects a function on the U_n grid");
    LcFunction out = make_zero_function(f.space);
    for (std::int64_t c = 0; c < grid.size(); ++c) {
        const PadicNumber& a = grid.representative(UnitClass{c});
        out.values[c] = f.values[grid.locate(a * a).index];
    }
    return out;
}

LcFunction pullback_phi(const UnitGrid& ugrid, const BallGrid& bgrid, const LcFunction& h) {
    if (h.space.kind != SpaceKind::Ball || !(h.space.params == ugrid.params()))
        throw ParameterMismatchError("pullback_phi expects a function on the p^n Z_p grid");
    LcFunction out = make_zero_function(Space{SpaceKind::Unit, ugrid.params()});
    for (std::int64_t c = 0; c < ugrid.size(); ++c) {
        const PadicNumber& a = ugrid.representative(UnitClass{c});
        out.values[c] = h.values[bgrid.locate(phi(a))];
    }
    return out;
}

} // namespace fuchs
