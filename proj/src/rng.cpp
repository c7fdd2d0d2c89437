#include "siegel/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace siegel::mc {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
        mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t index)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      ctr_{static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), 0u, 0u} {}

void RngStream::refill() {
    buf_ = philox4x32(ctr_, key_);
    pos_ = 0;
    if (++ctr_[2] == 0u)
        ++ctr_[3];
}

std::uint32_t RngStream::next_u32() {
    if (pos_ >= 4)
        refill();
    return buf_[pos_++];
}

double RngStream::next_double() {
    std::uint64_t hi = next_u32();
    std::uint64_t lo = next_u32();
    std::uint64_t bits = ((hi << 32) | lo) >> 11;  // 53 bits
    return static_cast<double>(bits) * 0x1.0p-53;
}

double RngStream::next_gaussian() {
    if (has_cached_gauss_) {
        has_cached_gauss_ = false;
        return cached_gauss_;
    }
    double u1 = 1.0 - next_double();  // in (0, 1], log-safe
    double u2 = next_double();
    double r = std::sqrt(-2.0 * std::log(u1));
    double phi = 2.0 * 3.141592653589793238462643383279502884 * u2;
    cached_gauss_ = r * std::sin(phi);
    has_cached_gauss_ = true;
    return r * std::cos(phi);
}

double gamma_variate(RngStream& g, double shape) {
    if (!(shape > 0.0))
        throw std::domain_error("gamma_variate: shape must be positive");
    if (shape < 1.0) {
        // Boost to shape+1, then scale back by U^{1/shape}.
        double x = gamma_variate(g, shape + 1.0);
        double u = 1.0 - g.next_double();
        return x * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = g.next_gaussian();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        double u = 1.0 - g.next_double();
        if (u < 1.0 - 0.0331 * x * x * x * x)
            return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
            return d * v;
    }
}

double beta_variate(RngStream& g, double a, double b) {
    double x = gamma_variate(g, a);
    double y = gamma_variate(g, b);
    return x / (x + y);
}

double reciprocal_quadratic_variate(RngStream& g, double m) {
    if (!(m > 1.0))
        throw std::domain_error("reciprocal_quadratic_variate: requires m > 1");
    // X = Z / sqrt(2 G) with Z normal and G ~ Gamma((m-1)/2) has density
    // proportional to (1+x^2)^{-m/2}.
    double z = g.next_gaussian();
    double gam = gamma_variate(g, 0.5 * (m - 1.0));
    return z / std::sqrt(2.0 * gam);
}

}  // namespace siegel::mc
