#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "siegel/kernels.hpp"
#include "siegel/mcquad.hpp"
#include "siegel/norms.hpp"
#include "siegel/specfun.hpp"

using namespace siegel;
using namespace siegel::mc;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double uniform(RngStream& g, double lo, double hi) {
    return lo + (hi - lo) * g.next_double();
}

SiegelPoint random_interior(RngStream& g, int n, double hmin = 0.3, double hmax = 1.8) {
    SiegelPoint z;
    z.z.resize(n + 1);
    double nrm = 0.0;
    for (int k = 0; k < n; ++k) {
        z.z[k] = complexd(uniform(g, -0.8, 0.8), uniform(g, -0.8, 0.8));
        nrm += std::norm(z.z[k]);
    }
    z.z[n] = complexd(uniform(g, -0.8, 0.8), nrm + uniform(g, hmin, hmax));
    return z;
}

double gamma_ratio(std::initializer_list<double> num, std::initializer_list<double> den) {
    double lg = 0.0;
    for (double x : num)
        lg += specfun::ln_gamma(x);
    for (double x : den)
        lg -= specfun::ln_gamma(x);
    return std::exp(lg);
}

}  // namespace

TEST_CASE("samples are pure functions of (seed, index) and satisfy the guards") {
    SamplerSpec spec{SamplerKind::RadialBetaBall, 1, 0.4, 99};
    BallPoint a = sample(spec, 12345);
    BallPoint b = sample(spec, 12345);
    for (int k = 0; k <= 1; ++k)
        CHECK(a.xi[k] == b.xi[k]);
    BallPoint c = sample(spec, 12346);
    CHECK(std::abs(a.xi[0] - c.xi[0]) > 0.0);

    SamplerSpec bad{SamplerKind::RadialBetaBall, 1, 1.2, 0};
    CHECK_THROWS_AS(sample(bad, 0), std::invalid_argument);

    for (auto kind : {SamplerKind::UniformBall, SamplerKind::UniformSphere,
                      SamplerKind::RadialBetaBall}) {
        SamplerSpec s2{kind, 1, 0.4, 7};
        for (std::uint64_t i = 0; i < 2000; ++i) {
            BallPoint p = sample(s2, i);
            double r = std::sqrt(norm_sq(p.xi));
            if (kind == SamplerKind::UniformSphere)
                CHECK(std::abs(r - 1.0) < 1e-12);
            else
                CHECK(r < 1.0);
            CHECK(std::abs(1.0 + p.xi[1]) > 1e-14);
        }
    }
}

TEST_CASE("radial-beta law with s = 0 reduces to the uniform ball") {
    // Kolmogorov-Smirnov distance of the squared radius against the
    // Beta(n+1, 1) distribution function u^{n+1}.
    const int n = 1;
    const std::size_t count = 100000;
    SamplerSpec spec{SamplerKind::RadialBetaBall, n, 0.0, 4242};
    auto points = sample_many(spec, count);
    std::vector<double> u(count);
    for (std::size_t i = 0; i < count; ++i)
        u[i] = norm_sq(points[i].xi);
    std::sort(u.begin(), u.end());
    double ks = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        double cdf = std::pow(u[i], n + 1.0);
        double hi = (i + 1.0) / count, lo = i * 1.0 / count;
        ks = std::max({ks, std::abs(cdf - hi), std::abs(cdf - lo)});
    }
    CHECK(ks < 0.01);
}

TEST_CASE("uniform ball moments: E|xi|^2 = 1/2 in complex dimension one") {
    auto est = integrate_ball(
        [](const BallPoint& xi) { return complexd(norm_sq(xi.xi), 0.0); }, 0, 200000, 11, 2);
    // divide by the ball volume pi to get the mean of |xi|^2
    CHECK(std::abs(est.value.real() / kPi - 0.5) < 5.0 * est.std_error / kPi + 1e-3);
}

TEST_CASE("zero integrand gives exactly zero with zero spread") {
    SamplerSpec spec{SamplerKind::UniformBall, 1, 0.0, 5};
    auto est = integrate_siegel([](const SiegelPoint&) { return complexd(0.0, 0.0); }, 1, spec,
                                5000, WeightMode::plain(), 2);
    CHECK(est.value == complexd(0.0, 0.0));
    CHECK(est.std_error == 0.0);
}

TEST_CASE("ball volume and normalized sphere mass") {
    for (int n : {0, 1, 2}) {
        auto ball = integrate_ball([](const BallPoint&) { return complexd(1.0, 0.0); }, n, 2000,
                                   17, 1);
        CHECK(ball.value.real() ==
              doctest::Approx(std::pow(kPi, n + 1.0) / std::tgamma(n + 2.0)).epsilon(1e-12));
        CHECK(ball.std_error < 1e-12);

        auto sph = integrate_sphere([](const BallPoint&) { return complexd(1.0, 0.0); }, n, 2000,
                                    17, 1);
        CHECK(sph.value.real() == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("bit-identical estimates for fixed seed across worker counts") {
    SamplerSpec spec{SamplerKind::RadialBetaBall, 1, 0.3, 12321};
    auto f = [](const SiegelPoint& w) {
        return complexd(std::pow(height(w), 0.3) / std::norm(rho(basepoint(1), w)), 0.0);
    };
    auto e1 = integrate_siegel(f, 1, spec, 100000, WeightMode::beta(0.3), 1);
    auto e2 = integrate_siegel(f, 1, spec, 100000, WeightMode::beta(0.3), 2);
    auto e4 = integrate_siegel(f, 1, spec, 100000, WeightMode::beta(0.3), 4);
    CHECK(e1.value.real() == e2.value.real());
    CHECK(e1.value.imag() == e2.value.imag());
    CHECK(e1.std_error == e2.std_error);
    CHECK(e1.value.real() == e4.value.real());
    CHECK(e1.std_error == e4.std_error);

    auto r1 = integrate_siegel(f, 1, spec, 100000, WeightMode::beta(0.3), 2);
    CHECK(r1.value.real() == e1.value.real());
}

TEST_CASE("domain integral reproduces a closed kernel mass") {
    // int height(w)^0.5 / |rho(i,w)|^{4.5} dV over the n=1 domain
    SiegelPoint bp = basepoint(1);
    auto f = [bp](const SiegelPoint& w) {
        return complexd(std::pow(height(w), 0.5) / std::pow(std::abs(rho(bp, w)), 4.5), 0.0);
    };
    SamplerSpec spec{SamplerKind::UniformBall, 1, 0.0, 31};
    auto est = integrate_siegel(f, 1, spec, 400000, WeightMode::plain(), 2);
    double closed = 4.0 * kPi * kPi * gamma_ratio({1.5, 1.0}, {2.25, 2.25});
    CHECK(std::abs(est.value.real() - closed) <= 5.0 * est.std_error);

    // n = 0 variant with (theta, gamma) = (2, 0) at the base point
    SiegelPoint bp0 = basepoint(0);
    auto f0 = [bp0](const SiegelPoint& w) {
        return complexd(1.0 / std::pow(std::abs(rho(bp0, w)), 4.0), 0.0);
    };
    SamplerSpec spec0{SamplerKind::UniformBall, 0, 0.0, 32};
    auto est0 = integrate_siegel(f0, 0, spec0, 400000, WeightMode::plain(), 2);
    // the pulled-back summand is constant here, so the estimate is exact
    // up to rounding and the spread collapses
    CHECK(std::abs(est0.value.real() - 4.0 * kPi) <= 5.0 * est0.std_error + 1e-12 * kPi);
}

TEST_CASE("boundary integral reproduces the half-plane arctangent mass") {
    SiegelPoint z = basepoint(0);
    auto f = [z](const SiegelPoint& u) {
        return complexd(1.0 / std::norm(rho(z, u)), 0.0);
    };
    auto est = integrate_boundary(f, 0, 400000, 77, 2);
    CHECK(std::abs(est.value.real() - 4.0 * kPi) <= 5.0 * est.std_error);

    // general dimension against the closed boundary mass
    RngStream g(78, 0);
    SiegelPoint z1 = random_interior(g, 1);
    const double theta = 2.1;
    auto f1 = [z1, theta](const SiegelPoint& u) {
        return complexd(std::pow(std::abs(rho(z1, u)), -(2.0 + theta)), 0.0);
    };
    auto est1 = integrate_boundary(f1, 1, 400000, 79, 2);
    double closed = 4.0 * kPi * kPi * gamma_ratio({theta}, {0.5 * (2.0 + theta), 0.5 * (2.0 + theta)}) *
                    std::pow(height(z1), -theta);
    CHECK(std::abs(est1.value.real() - closed) <= 5.0 * est1.std_error);
}

TEST_CASE("rho-weighted importance sampler integrates the kernel family") {
    RngStream g(91, 0);
    for (int n : {0, 1}) {
        SiegelPoint z = random_interior(g, n);
        const double theta = 1.3, gamma = 0.2;
        const double expo = n + 2.0 + theta + gamma;
        auto f = [z, gamma, expo](const SiegelPoint& w, double hw) {
            return complexd(std::pow(hw, gamma) * std::pow(std::abs(rho(z, w)), -expo), 0.0);
        };
        auto est = integrate_siegel_rho_weighted(f, n, z, 0.8, 0.0, 200000, 5 + n, 2);
        double closed = 4.0 * std::pow(kPi, n + 1.0) *
                        gamma_ratio({1.0 + gamma, theta}, {0.5 * expo, 0.5 * expo}) *
                        std::pow(height(z), -theta);
        CHECK(std::abs(est.value.real() - closed) <= 4.0 * est.std_error);
    }
}

TEST_CASE("Forelli reduction of a boundary integral of fewer variables") {
    for (int n : {1, 2}) {
        auto boundary_f = [](const SiegelPoint& u) {
            double s = 0.0;
            for (std::size_t k = 1; k < u.z.size(); ++k)
                s += std::norm(u.z[k]);
            return complexd(std::exp(-s), 0.0);
        };
        auto domain_f = [](const SiegelPoint& w) {
            return complexd(std::exp(-norm_sq(w.z)), 0.0);
        };
        auto bnd = integrate_boundary(boundary_f, n, 300000, 555, 2);
        SamplerSpec spec{SamplerKind::UniformBall, n - 1, 0.0, 556};
        auto dom = integrate_siegel(domain_f, n - 1, spec, 300000, WeightMode::plain(), 2);
        double se = std::sqrt(bnd.std_error * bnd.std_error +
                              kPi * kPi * dom.std_error * dom.std_error);
        CHECK(std::abs(bnd.value.real() - kPi * dom.value.real()) <= 3.0 * se);
    }
}

TEST_CASE("one-variable boundary integrals reduce to the upper half-plane") {
    // int f(2 i rho(w,z)) dbeta(w) with f(l) = exp(-|l|^2) equals
    // pi^n/(n-1)! * int_{C_+} f (Im l)^{n-1}, a Gaussian closed form.
    RngStream g(92, 0);
    for (int n : {1, 2}) {
        HeisenbergElement h;
        h.zeta.resize(n);
        for (int k = 0; k < n; ++k)
            h.zeta[k] = complexd(uniform(g, -0.6, 0.6), uniform(g, -0.6, 0.6));
        h.t = uniform(g, -1.0, 1.0);
        SiegelPoint z = heis_orbit_of_origin(h);

        auto f = [z](const SiegelPoint& w) {
            complexd lam = 2.0 * complexd(0, 1) * rho(w, z);
            return complexd(std::exp(-std::norm(lam)), 0.0);
        };
        auto est = integrate_boundary(f, n, 400000, 606 + n, 2);
        double closed = (n == 1) ? kPi * kPi / 2.0
                                 : kPi * kPi * std::sqrt(kPi) / 2.0;
        CHECK(std::abs(est.value.real() - closed) <= 5.0 * est.std_error);
    }
}

TEST_CASE("reported standard errors calibrate 2-sigma coverage") {
    const double truth = kPi;  // volume of the n=0 ball
    int covered = 0;
    for (int s = 0; s < 50; ++s) {
        auto est = integrate_ball(
            [](const BallPoint& xi) { return complexd(1.0 + xi.xi[0].real(), 0.0); }, 0, 20000,
            1000 + s, 1);
        if (std::abs(est.value.real() - truth) <= 2.0 * est.std_error)
            ++covered;
    }
    CHECK(covered >= 45);
}

TEST_CASE("T_alpha application against closed values") {
    kernels::TAlphaParams p0(0, 0.0, 2.0);
    SiegelPoint bp = basepoint(0);
    auto zero = apply_T_alpha(p0, [](const SiegelPoint&) { return complexd(0, 0); }, bp, 5000,
                              3, 1);
    CHECK(zero.value == complexd(0.0, 0.0));

    // T_0 applied to height^{-1/2} at the base point equals pi; the plain
    // estimator is heavy-tailed here, so the tolerance is wide.
    auto est = apply_T_alpha(
        p0, [](const SiegelPoint& w) { return complexd(std::pow(height(w), -0.5), 0.0); }, bp,
        1000000, 4, 2);
    CHECK(std::abs(est.value.real() - kPi) <= std::max(6.0 * est.std_error, 0.02 * kPi));

    // psi_t route: matched exponents keep the summand bounded
    kernels::TAlphaParams p1(1, 0.5, 3.0);
    const double t = 0.2;
    RngStream g(93, 0);
    for (int trial = 0; trial < 3; ++trial) {
        SiegelPoint z = random_interior(g, 1);
        auto psi = [p1, t](const SiegelPoint& w) {
            return complexd(kernels::psi_t(p1, t, w), 0.0);
        };
        auto mcv = apply_T_alpha(p1, psi, z, 200000, 500 + trial, 2);
        double closed = kernels::closed_T_psi(p1, t, z);
        CHECK(std::abs(mcv.value.real() - closed) <= 3.0 * mcv.std_error);
    }
}

TEST_CASE("closed psi_t norm against matched importance sampling") {
    // ||psi_t||_p^p with the Beta radial law matched to (1-r^2)^{-tp};
    // the pulled-back summand is the bounded |1+xi_{n+1}| envelope alone
    kernels::TAlphaParams params(0, 0.0, 2.0);
    const double t = 0.2;
    SiegelPoint bp = basepoint(0);
    auto f = [&params, t](const SiegelPoint& w) {
        double v = kernels::psi_t(params, t, w);
        return complexd(v * v, 0.0);  // p = 2
    };
    double s = t * params.p;
    SamplerSpec spec{SamplerKind::RadialBetaBall, 0, s, 2718};
    auto est = integrate_siegel(f, 0, spec, 200000, WeightMode::beta(s), 2);
    double closed = kernels::closed_psi_norm(params, t);
    // constant summand at these parameters: exact up to rounding
    CHECK(std::abs(est.value.real() - closed) <= 4.0 * est.std_error + 1e-12 * closed);
}

TEST_CASE("Berezin transform of the constant function is one") {
    RngStream g(94, 0);
    for (int n : {0, 1}) {
        for (int trial = 0; trial < 3; ++trial) {
            SiegelPoint z = random_interior(g, n);
            auto f = [z](const SiegelPoint& w) {
                return complexd(kernels::berezin_kernel(z, w), 0.0);
            };
            SamplerSpec spec{SamplerKind::UniformBall, n, 0.0,
                             static_cast<std::uint64_t>(700 + 10 * n + trial)};
            auto est = integrate_siegel(f, n, spec, 200000, WeightMode::plain(), 2);
            CHECK(std::abs(est.value.real() - 1.0) <= 4.0 * est.std_error);
        }
    }
}

TEST_CASE("szego application is Heisenberg covariant") {
    const int n = 1;
    RngStream g(95, 0);
    SiegelPoint z = random_interior(g, n);
    HeisenbergElement h;
    h.zeta = {complexd(0.4, -0.3)};
    h.t = 0.7;

    auto f = [](const SiegelPoint& u) {
        double s = 0.0;
        for (int k = 0; k < 1; ++k)
            s += std::norm(u.z[k]);
        double t = u.z[1].real();
        return complexd(std::exp(-s - t * t), 0.0);
    };
    HeisenbergElement hinv = heis_inverse(h);
    auto f_shift = [f, hinv](const SiegelPoint& u) { return f(heis_apply(hinv, u)); };

    auto base = apply_szego_boundary(n, f, z, 300000, 808, 2);
    auto moved = apply_szego_boundary(n, f_shift, heis_apply(h, z), 300000, 809, 2);
    double se = std::sqrt(base.std_error * base.std_error + moved.std_error * moved.std_error);
    CHECK(std::abs(base.value - moved.value) <= 3.0 * se);
}

TEST_CASE("non-finite samples abort with the offending point") {
    SamplerSpec spec{SamplerKind::UniformBall, 0, 0.0, 6};
    bool thrown = false;
    try {
        integrate_siegel(
            [](const SiegelPoint& w) {
                return complexd(1.0 / (height(w) - height(w)), 0.0);  // 1/0
            },
            0, spec, 1000, WeightMode::plain(), 1);
    } catch (const std::runtime_error& e) {
        thrown = true;
        CHECK(std::string(e.what()).find("non-finite") != std::string::npos);
        CHECK(std::string(e.what()).find("xi") != std::string::npos);
    }
    CHECK(thrown);
}
