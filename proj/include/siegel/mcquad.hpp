#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "siegel/geometry.hpp"
#include "siegel/kernels.hpp"
#include "siegel/rng.hpp"

namespace siegel::mc {

/// Result of a Monte-Carlo integration.  std_error is the sample standard
/// deviation divided by sqrt(samples), accumulated in one numerically
/// stable pass.
struct MonteCarloEstimate {
    complexd value{0.0, 0.0};
    double std_error = 0.0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;

    double real() const { return value.real(); }
};

enum class SamplerKind { UniformBall, UniformSphere, RadialBetaBall };

/// Description of a point stream on the ball/sphere of C^{n+1}.
/// RadialBetaBall draws the squared radius from Beta(n+1, 1-s), i.e. the
/// radial density is proportional to r^{2n+1} (1-r^2)^{-s}; requires s < 1.
struct SamplerSpec {
    SamplerKind kind = SamplerKind::UniformBall;
    int n = 0;
    double s = 0.0;
    std::uint64_t seed = 0;
};

/// Draw sample number `index` of the stream; a pure function of
/// (spec.seed, index).  All samples satisfy |xi| < 1 (or = 1 on the sphere)
/// and |1 + xi_{n+1}| > 1e-14.
BallPoint sample(const SamplerSpec& spec, std::uint64_t index);

/// First `count` samples of the stream.
std::vector<BallPoint> sample_many(const SamplerSpec& spec, std::size_t count);

/// Importance weighting for integrate_siegel.
struct WeightMode {
    enum Kind { Plain, Beta } kind = Plain;
    double s = 0.0;

    static WeightMode plain() { return {Plain, 0.0}; }
    static WeightMode beta(double s) { return {Beta, s}; }
};

using Integrand = std::function<complexd(const SiegelPoint&)>;
using BallIntegrand = std::function<complexd(const BallPoint&)>;

/// Integral of f over the Siegel domain via the ball pullback
///   int f dV = int_ball f(Phi(xi)) J_Phi(xi) dV(xi).
/// Plain mode requires a UniformBall spec; Beta mode requires a
/// RadialBetaBall spec with matching s and multiplies each summand by
/// (1-|xi|^2)^s over the Beta radial density, for integrands carrying a
/// matching (1-|xi|^2)^{-s} singularity.
/// Integrands must be pure and safe to call from several threads; a
/// non-finite sample aborts with a diagnostic naming the offending point.
MonteCarloEstimate integrate_siegel(const Integrand& f, int n, const SamplerSpec& spec,
                                    std::size_t count, WeightMode mode, int workers = 1);

/// Integral of f over the boundary against d-beta, as
///   (4 pi^{n+1} / n!) * mean of f(Phi(xi)) / |1+xi_{n+1}|^{2(n+1)}
/// over the uniform sphere.
MonteCarloEstimate integrate_boundary(const Integrand& f, int n, std::size_t count,
                                      std::uint64_t seed, int workers = 1);

/// Lebesgue integral over the unit ball of C^{n+1} (uniform sampling).
MonteCarloEstimate integrate_ball(const BallIntegrand& f, int n, std::size_t count,
                                  std::uint64_t seed, int workers = 1);

/// Integral against the normalized surface measure of the unit sphere.
MonteCarloEstimate integrate_sphere(const BallIntegrand& f, int n, std::size_t count,
                                    std::uint64_t seed, int workers = 1);

/// Plain expectation E[f(xi)] under the sampler's own law (no weighting).
MonteCarloEstimate sampler_expectation(const BallIntegrand& f, const SamplerSpec& spec,
                                       std::size_t count, int workers = 1);

/// Integrand receiving the exact sampled height alongside the point:
/// heights drawn near zero cancel catastrophically when recomputed from
/// translated coordinates, so singular height powers must use this value.
using HeightAwareIntegrand = std::function<complexd(const SiegelPoint&, double)>;

/// Integral of f over the Siegel domain by exact importance sampling from
///   p0(w) dV  proportional to  height(w)^{gamma0} / |rho(z,w)|^{n+2+theta0+gamma0},
/// built from the boundary-fibration of the domain (height coordinate Beta
/// distributed, boundary slice sampled through its closed-form marginals).
/// Requires z interior, theta0 > 0, gamma0 > -1.  Designed for integrands
/// with the same large-|w| decay, where the ball pullback has a heavy tail.
MonteCarloEstimate integrate_siegel_rho_weighted(const HeightAwareIntegrand& f, int n,
                                                 const SiegelPoint& z, double theta0,
                                                 double gamma0, std::size_t count,
                                                 std::uint64_t seed, int workers = 1);

/// (T_alpha f)(z) estimated with a Beta radial weight matched to
/// height(w)^alpha when alpha < 0, plain weight otherwise.
MonteCarloEstimate apply_T_alpha(const kernels::TAlphaParams& params, const Integrand& f,
                                 const SiegelPoint& z, std::size_t count, std::uint64_t seed,
                                 int workers = 1);

/// Cauchy-Szego integral of a boundary function f at interior z.
MonteCarloEstimate apply_szego_boundary(int n, const Integrand& f, const SiegelPoint& z,
                                        std::size_t count, std::uint64_t seed, int workers = 1);

/// Volume of the unit ball of C^{n+1} (real dimension 2n+2).
double ball_volume(int n);

}  // namespace siegel::mc
