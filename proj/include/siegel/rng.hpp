#pragma once

#include <array>
#include <cstdint>

namespace siegel::mc {

/// Counter-based Philox4x32-10 block function.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key);

/// Deterministic random stream for one sample index: every value drawn is a
/// pure function of (seed, index, position).  Streams for distinct indices
/// are independent, so sample i never depends on the worker that produced it.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t index);

    std::uint32_t next_u32();
    /// Uniform double in [0, 1) with 53 random bits.
    double next_double();
    /// Standard normal via Box-Muller (pairs cached).
    double next_gaussian();

private:
    void refill();

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> ctr_;
    std::array<std::uint32_t, 4> buf_{};
    int pos_ = 4;
    double cached_gauss_ = 0.0;
    bool has_cached_gauss_ = false;
};

/// Gamma(shape) variate, shape > 0 (Marsaglia-Tsang).
double gamma_variate(RngStream& g, double shape);

/// Beta(a, b) variate via two Gamma draws.
double beta_variate(RngStream& g, double a, double b);

/// Draw X with density proportional to (1+x^2)^{-m/2}, m > 1
/// (a rescaled Student-t with m-1 degrees of freedom).
double reciprocal_quadratic_variate(RngStream& g, double m);

}  // namespace siegel::mc
