#include "fuchs/random.hpp"

#include <cmath>

namespace fuchs {

std::int64_t SeededRng::uniform_int(std::int64_t bound) {
    // Rejection-free modulo is fine here: bounds are tiny powers of p and the
    // bias is far below anything a residual check could see.
    return static_cast<std::int64_t>(engine_() % static_cast<std::uint64_t>(bound));
}

double SeededRng::uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::complex<double> SeededRng::gaussian_complex() {
    const double u1 = 1.0 - uniform01(); // (0, 1]
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
}

PadicNumber SeededRng::random_principal_unit(std::int64_t prime, int k, int precision) {
    std::vector<std::int64_t> digits(static_cast<std::size_t>(precision), 0);
    digits[0] = 1;
    for (int i = k; i < precision; ++i)
        digits[static_cast<std::size_t>(i)] = uniform_int(prime);
    return PadicNumber::from_digits(prime, 0, std::move(digits), precision);
}

PadicNumber SeededRng::random_ball_element(std::int64_t prime, int k, int precision) {
    std::vector<std::int64_t> digits(static_cast<std::size_t>(precision - k));
    for (auto& d : digits) d = uniform_int(prime);
    return PadicNumber::from_digits(prime, k, std::move(digits), precision);
}

PadicNumber SeededRng::random_ball_element_nonzero(std::int64_t prime, int k, int precision) {
    for (;;) {
        PadicNumber x = random_ball_element(prime, k, precision);
        if (!x.is_zero()) return x;
    }
}

XnElement SeededRng::random_xn_element(const LevelParams& params) {
    const std::int64_t pm = params.pow_m();
    return XnElement{params, UnitClass{uniform_int(pm)}, GammaClass{uniform_int(pm)}};
}

LcFunction SeededRng::random_function(const Space& space) {
    LcFunction f = make_zero_function(space);
    for (Eigen::Index i = 0; i < f.values.size(); ++i) f.values[i] = gaussian_complex();
    const double norm = l2_norm(f);
    if (norm > 0) f.values /= norm;
    return f;
}

} // namespace fuchs
