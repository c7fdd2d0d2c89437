#include "siegel/mcquad.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "siegel/specfun.hpp"

namespace siegel::mc {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr std::size_t kBlock = 16384;

// Single-pass mean / scatter accumulator (Welford), merged across blocks
// with the pairwise update so the combination order is fixed by the block
// index, never by the worker that produced a block.
struct Accum {
    std::size_t n = 0;
    complexd mean{0.0, 0.0};
    double m2 = 0.0;

    void add(complexd x) {
        ++n;
        complexd d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += (std::conj(d) * (x - mean)).real();
    }

    void merge(const Accum& o) {
        if (o.n == 0)
            return;
        if (n == 0) {
            *this = o;
            return;
        }
        const double na = static_cast<double>(n);
        const double nb = static_cast<double>(o.n);
        complexd d = o.mean - mean;
        mean += d * (nb / (na + nb));
        m2 += o.m2 + std::norm(d) * na * nb / (na + nb);
        n += o.n;
    }
};

[[noreturn]] void throw_nonfinite(const char* where, const BallPoint& xi) {
    std::string msg = std::string(where) + ": non-finite integrand sample at xi = (";
    char buf[64];
    for (std::size_t k = 0; k < xi.xi.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g%+.17gi", xi.xi[k].real(), xi.xi[k].imag());
        msg += buf;
        if (k + 1 < xi.xi.size())
            msg += ", ";
    }
    msg += ")";
    throw std::runtime_error(msg);
}

// Runs `count` summand evaluations split into fixed blocks.  Each worker
// receives its own copy of the prototype callable, so callables may carry
// reusable buffers; sample index i always maps to RngStream(seed, i).
template <class F>
MonteCarloEstimate run_blocks(std::size_t count, std::uint64_t seed, int workers,
                              const F& prototype) {
    if (count == 0)
        throw std::invalid_argument("monte carlo run: count must be positive");
    workers = std::max(1, workers);
    const std::size_t blocks = (count + kBlock - 1) / kBlock;
    std::vector<Accum> acc(blocks);

    auto run_range = [&](F body, std::size_t first_block, std::size_t stride,
                         std::exception_ptr& err) {
        try {
            for (std::size_t b = first_block; b < blocks; b += stride) {
                Accum local;
                const std::size_t lo = b * kBlock;
                const std::size_t hi = std::min(count, lo + kBlock);
                for (std::size_t i = lo; i < hi; ++i) {
                    RngStream g(seed, i);
                    local.add(body(g));
                }
                acc[b] = local;
            }
        } catch (...) {
            err = std::current_exception();
        }
    };

    std::vector<std::exception_ptr> errors(workers);
    if (workers == 1 || blocks == 1) {
        run_range(prototype, 0, 1, errors[0]);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(run_range, prototype, static_cast<std::size_t>(w),
                              static_cast<std::size_t>(workers), std::ref(errors[w]));
        for (auto& th : pool)
            th.join();
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);

    Accum total;
    for (const Accum& a : acc)
        total.merge(a);
    MonteCarloEstimate est;
    est.value = total.mean;
    est.samples = total.n;
    est.seed = seed;
    est.std_error = (total.n > 1)
                        ? std::sqrt(total.m2 / (static_cast<double>(total.n) - 1.0)) /
                              std::sqrt(static_cast<double>(total.n))
                        : 0.0;
    return est;
}

// Uniform direction on the unit sphere of R^{2(m)} packed as m complex values.
void gaussian_direction(RngStream& g, std::vector<complexd>& out, std::size_t m) {
    out.resize(m);
    for (;;) {
        double nrm = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            double re = g.next_gaussian();
            double im = g.next_gaussian();
            out[k] = complexd(re, im);
            nrm += re * re + im * im;
        }
        if (nrm > 1e-300) {
            double inv = 1.0 / std::sqrt(nrm);
            for (auto& c : out)
                c *= inv;
            return;
        }
    }
}

// Draws a point and reports 1 - r^2 exactly as sampled: recomputing it
// from the scaled coordinates cancels catastrophically near the sphere.
// Returns 0 for sphere samples.
double draw_point(RngStream& g, const SamplerSpec& spec, BallPoint& out) {
    const std::size_t m = static_cast<std::size_t>(spec.n) + 1;
    for (;;) {
        gaussian_direction(g, out.xi, m);
        double one_m = 0.0;
        if (spec.kind != SamplerKind::UniformSphere) {
            double u;
            if (spec.kind == SamplerKind::UniformBall) {
                u = std::pow(g.next_double(), 1.0 / m);
            } else {
                u = beta_variate(g, static_cast<double>(m), 1.0 - spec.s);
            }
            // For Beta shape parameters 1-s near 0 a macroscopic share of
            // the radial mass lies closer to 1 than double resolution;
            // clamp it to the largest usable radius rather than resampling,
            // which would silently condition the law away from that region.
            u = std::min(u, 1.0 - 0x1.0p-50);
            one_m = 1.0 - u;  // exact for u >= 1/2, ulp-accurate below
            double r = std::sqrt(u);
            if (!(r < 1.0))
                continue;
            for (auto& c : out.xi)
                c *= r;
        }
        if (std::abs(1.0 + out.xi[m - 1]) > kSouthPoleTol)
            return one_m;
    }
}

// Pullback of a ball sample with the height pinned to its exact value
// (1-|xi|^2)/|1+xi_{n+1}|^2, immune to the cancellation in recomputing
// Im z_{n+1} - |z'|^2 from rounded coordinates.
SiegelPoint pullback_exact_height(const BallPoint& xi, double one_m) {
    SiegelPoint w = cayley_phi(xi);
    const int n = xi.dim();
    double h = one_m / std::norm(1.0 + xi.xi[n]);
    double prime_sq = 0.0;
    for (int k = 0; k < n; ++k)
        prime_sq += std::norm(w.z[k]);
    w.z[n] = complexd(w.z[n].real(), prime_sq + h);
    return w;
}

void validate_spec(const SamplerSpec& spec) {
    if (spec.n < 0)
        throw std::invalid_argument("SamplerSpec: n must be nonnegative");
    if (spec.kind == SamplerKind::RadialBetaBall && !(spec.s < 1.0))
        throw std::invalid_argument("SamplerSpec: radial exponent requires s < 1");
}

}  // namespace

double ball_volume(int n) {
    return std::pow(kPi, n + 1.0) * std::exp(-specfun::ln_gamma(n + 2.0));
}

BallPoint sample(const SamplerSpec& spec, std::uint64_t index) {
    validate_spec(spec);
    RngStream g(spec.seed, index);
    BallPoint p;
    draw_point(g, spec, p);
    return p;
}

std::vector<BallPoint> sample_many(const SamplerSpec& spec, std::size_t count) {
    std::vector<BallPoint> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(sample(spec, i));
    return out;
}

MonteCarloEstimate integrate_siegel(const Integrand& f, int n, const SamplerSpec& spec,
                                    std::size_t count, WeightMode mode, int workers) {
    validate_spec(spec);
    if (spec.n != n)
        throw std::invalid_argument("integrate_siegel: spec dimension mismatch");
    if (mode.kind == WeightMode::Plain && spec.kind != SamplerKind::UniformBall)
        throw std::invalid_argument("integrate_siegel: plain mode needs a uniform-ball spec");
    if (mode.kind == WeightMode::Beta &&
        (spec.kind != SamplerKind::RadialBetaBall || spec.s != mode.s))
        throw std::invalid_argument("integrate_siegel: beta mode needs a matching radial spec");

    // Plain: weight = V * J_Phi.  Beta(s): weight = J_Phi * (1-|xi|^2)^s * C,
    // C = pi^{n+1} Gamma(1-s) / Gamma(n+2-s) the inverse Beta density scale.
    const double plain_w = ball_volume(n);
    const double beta_w =
        (mode.kind == WeightMode::Beta)
            ? std::pow(kPi, n + 1.0) *
                  std::exp(specfun::ln_gamma(1.0 - mode.s) - specfun::ln_gamma(n + 2.0 - mode.s))
            : 0.0;

    struct Body {
        const Integrand* f;
        SamplerSpec spec;
        WeightMode mode;
        double plain_w, beta_w;
        BallPoint xi;

        complexd operator()(RngStream& g) {
            double one_m = draw_point(g, spec, xi);
            SiegelPoint w = pullback_exact_height(xi, one_m);
            double weight = jac_phi(xi);
            if (mode.kind == WeightMode::Beta) {
                weight *= std::pow(one_m, mode.s) * beta_w;
            } else {
                weight *= plain_w;
            }
            complexd v = (*f)(w) * weight;
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw_nonfinite("integrate_siegel", xi);
            return v;
        }
    };
    return run_blocks(count, spec.seed, workers, Body{&f, spec, mode, plain_w, beta_w, {}});
}

MonteCarloEstimate integrate_boundary(const Integrand& f, int n, std::size_t count,
                                      std::uint64_t seed, int workers) {
    const double scale =
        4.0 * std::pow(kPi, n + 1.0) * std::exp(-specfun::ln_gamma(n + 1.0));

    struct Body {
        const Integrand* f;
        SamplerSpec spec;
        double scale;
        int n;
        BallPoint xi;

        complexd operator()(RngStream& g) {
            draw_point(g, spec, xi);
            SiegelPoint u = pullback_exact_height(xi, 0.0);
            double w = scale / std::pow(std::abs(1.0 + xi.xi[n]), 2.0 * (n + 1.0));
            complexd v = (*f)(u) * w;
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw_nonfinite("integrate_boundary", xi);
            return v;
        }
    };
    SamplerSpec spec{SamplerKind::UniformSphere, n, 0.0, seed};
    return run_blocks(count, seed, workers, Body{&f, spec, scale, n, {}});
}

MonteCarloEstimate integrate_ball(const BallIntegrand& f, int n, std::size_t count,
                                  std::uint64_t seed, int workers) {
    struct Body {
        const BallIntegrand* f;
        SamplerSpec spec;
        double vol;
        BallPoint xi;

        complexd operator()(RngStream& g) {
            draw_point(g, spec, xi);
            complexd v = (*f)(xi) * vol;
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw_nonfinite("integrate_ball", xi);
            return v;
        }
    };
    SamplerSpec spec{SamplerKind::UniformBall, n, 0.0, seed};
    return run_blocks(count, seed, workers, Body{&f, spec, ball_volume(n), {}});
}

MonteCarloEstimate integrate_sphere(const BallIntegrand& f, int n, std::size_t count,
                                    std::uint64_t seed, int workers) {
    struct Body {
        const BallIntegrand* f;
        SamplerSpec spec;
        BallPoint xi;

        complexd operator()(RngStream& g) {
            draw_point(g, spec, xi);
            complexd v = (*f)(xi);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw_nonfinite("integrate_sphere", xi);
            return v;
        }
    };
    SamplerSpec spec{SamplerKind::UniformSphere, n, 0.0, seed};
    return run_blocks(count, seed, workers, Body{&f, spec, {}});
}

MonteCarloEstimate sampler_expectation(const BallIntegrand& f, const SamplerSpec& spec,
                                       std::size_t count, int workers) {
    validate_spec(spec);
    struct Body {
        const BallIntegrand* f;
        SamplerSpec spec;
        BallPoint xi;

        complexd operator()(RngStream& g) {
            draw_point(g, spec, xi);
            complexd v = (*f)(xi);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw_nonfinite("sampler_expectation", xi);
            return v;
        }
    };
    return run_blocks(count, spec.seed, workers, Body{&f, spec, {}});
}

MonteCarloEstimate integrate_siegel_rho_weighted(const HeightAwareIntegrand& f, int n,
                                                 const SiegelPoint& z, double theta0,
                                                 double gamma0, std::size_t count,
                                                 std::uint64_t seed, int workers) {
    if (!(theta0 > 0.0) || !(gamma0 > -1.0))
        throw std::invalid_argument("integrate_siegel_rho_weighted: needs theta0 > 0, gamma0 > -1");
    if (z.dim() != n || !is_interior(z))
        throw std::invalid_argument("integrate_siegel_rho_weighted: z must be interior of dim n");

    const double h = height(z);
    const double M = n + 2.0 + theta0 + gamma0;
    // Total mass of height^gamma0 / |rho(z,.)|^M over the domain.
    const double mass = 4.0 * std::pow(kPi, n + 1.0) *
                        std::exp(specfun::ln_gamma(1.0 + gamma0) + specfun::ln_gamma(theta0) -
                                 2.0 * specfun::ln_gamma(0.5 * M)) *
                        std::pow(h, -theta0);

    HeisenbergElement shift;
    shift.zeta.assign(z.z.begin(), z.z.begin() + n);
    shift.t = z.z[n].real();

    struct Body {
        const HeightAwareIntegrand* f;
        HeisenbergElement shift;
        double h, M, theta0, gamma0, mass;
        int n;
        SiegelPoint w0;
        std::vector<complexd> dir;

        complexd operator()(RngStream& g) {
            // Height coordinate t, then the boundary slice at height t
            // through its radial and flat marginals.
            double v1 = std::min(beta_variate(g, gamma0 + 1.0, theta0), 1.0 - 0x1.0p-50);
            double t = h * v1 / (1.0 - v1);
            double A = h + t;
            double om = 0.0;
            w0.z.assign(n + 1, complexd(0.0, 0.0));
            if (n >= 1) {
                double v2 = std::min(beta_variate(g, static_cast<double>(n), theta0 + gamma0 + 1.0),
                                     1.0 - 0x1.0p-50);
                om = A * v2 / (1.0 - v2);
                gaussian_direction(g, dir, static_cast<std::size_t>(n));
                double r = std::sqrt(om);
                for (int k = 0; k < n; ++k)
                    w0.z[k] = r * dir[k];
            }
            double s_re = (om + A) * reciprocal_quadratic_variate(g, M);
            w0.z[n] = complexd(s_re, om + t);
            SiegelPoint w = heis_apply(shift, w0);

            double rmod = std::abs(rho_shifted(s_re, om, A));
            double weight = mass * std::pow(rmod, M) * std::pow(t, -gamma0);
            complexd v = (*f)(w, t) * weight;
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                BallPoint tag;
                tag.xi = w.z;
                throw_nonfinite("integrate_siegel_rho_weighted", tag);
            }
            return v;
        }

        static complexd rho_shifted(double s_re, double om, double A) {
            // rho((0, i h), w0) with w0 at height t on the slice:
            // (om + A)/2 + i s_re/2.
            return complexd(0.5 * (om + A), 0.5 * s_re);
        }
    };
    return run_blocks(count, seed, workers,
                      Body{&f, shift, h, M, theta0, gamma0, mass, n, {}, {}});
}

MonteCarloEstimate apply_T_alpha(const kernels::TAlphaParams& params, const Integrand& f,
                                 const SiegelPoint& z, std::size_t count, std::uint64_t seed,
                                 int workers) {
    const double s = std::max(0.0, -params.alpha);
    SamplerSpec spec{s > 0.0 ? SamplerKind::RadialBetaBall : SamplerKind::UniformBall, params.n,
                     s, seed};
    WeightMode mode = s > 0.0 ? WeightMode::beta(s) : WeightMode::plain();
    auto integrand = [&params, &f, &z](const SiegelPoint& w) -> complexd {
        return kernels::t_alpha_kernel(params, z, w) * f(w);
    };
    return integrate_siegel(integrand, params.n, spec, count, mode, workers);
}

MonteCarloEstimate apply_szego_boundary(int n, const Integrand& f, const SiegelPoint& z,
                                        std::size_t count, std::uint64_t seed, int workers) {
    auto integrand = [n, &f, &z](const SiegelPoint& u) -> complexd {
        return kernels::szego_kernel(z, u) * f(u);
    };
    return integrate_boundary(integrand, n, count, seed, workers);
}

}  // namespace siegel::mc
