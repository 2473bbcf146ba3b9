#pragma once

#include <cstdint>
#include <random>

#include "fuchs/grids.hpp"

namespace fuchs {

// Deterministic source of test data. Gaussians are produced by an explicit
// Box-Muller step on top of mt19937_64 so that a given seed yields the same
// stream on every platform.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }
    std::int64_t uniform_int(std::int64_t bound); // [0, bound)
    double uniform01();                           // [0, 1)
    std::complex<double> gaussian_complex();

    // Random unit in U_k at the given precision (digits above p^k uniform).
    PadicNumber random_principal_unit(std::int64_t prime, int k, int precision);
    // Random element of p^k Z_p at the given precision (may be zero).
    PadicNumber random_ball_element(std::int64_t prime, int k, int precision);
    // Random element with valuation >= k that is nonzero at the precision.
    PadicNumber random_ball_element_nonzero(std::int64_t prime, int k, int precision);

    XnElement random_xn_element(const LevelParams& params);

    // Complex Gaussian entries, normalized in L².
    LcFunction random_function(const Space& space);

private:
    std::mt19937_64 engine_;
};

} // namespace fuchs
