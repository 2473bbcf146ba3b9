#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace fuchs::detail {

inline std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
    return static_cast<std::int64_t>(static_cast<__int128>(a) * b % m);
}

// Table of e^{2*pi*i*r/order}, r = 0..order-1. Matches phase_to_complex on
// reduced fractions bit for bit (correctly rounded division).
inline std::vector<std::complex<double>> unit_roots(std::int64_t order) {
    std::vector<std::complex<double>> roots(static_cast<std::size_t>(order));
    for (std::int64_t r = 0; r < order; ++r)
        roots[static_cast<std::size_t>(r)] =
            std::polar(1.0, 2.0 * M_PI * (static_cast<double>(r) / static_cast<double>(order)));
    return roots;
}

} // namespace fuchs::detail
