#include "siegel/kernels.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "siegel/specfun.hpp"

namespace siegel::kernels {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

using specfun::ln_gamma;

double gamma_ratio(std::initializer_list<double> num, std::initializer_list<double> den) {
    double lg = 0.0;
    for (double x : num)
        lg += ln_gamma(x);
    for (double x : den)
        lg -= ln_gamma(x);
    return std::exp(lg);
}

}  // namespace

complexd cpow(complexd base, double exponent) {
    assert(base.real() > 0.0 && "complex power base must have positive real part");
    return std::pow(base, exponent);
}

complexd ipow(complexd base, int exponent) {
    if (exponent < 0)
        return 1.0 / ipow(base, -exponent);
    complexd result(1.0, 0.0);
    complexd acc = base;
    for (int e = exponent; e > 0; e >>= 1) {
        if (e & 1)
            result *= acc;
        acc *= acc;
    }
    return result;
}

double kernel_constant(int n) {
    return std::exp(ln_gamma(n + 2.0)) / (4.0 * std::pow(kPi, n + 1.0));
}

TAlphaParams::TAlphaParams(int n_, double alpha_, double p_)
    : n(n_), alpha(alpha_), p(p_) {
    if (n < 0)
        throw std::invalid_argument("TAlphaParams: n must be nonnegative");
    if (!(alpha > -1.0))
        throw std::invalid_argument("TAlphaParams: alpha must exceed -1");
    if (!(p >= 1.0))
        throw std::invalid_argument("TAlphaParams: p must be at least 1");
    q = (p > 1.0) ? p / (p - 1.0) : std::numeric_limits<double>::infinity();
    beta = 0.5 * (n + 2.0 + alpha);
    beta_tilde = 0.5 * (n + 2.0 - alpha);
}

TestCase dispatch_case(const TAlphaParams& params) {
    return ((params.n + 2.0 + params.alpha) * params.p > params.n + 3.0) ? TestCase::CaseI
                                                                         : TestCase::CaseII;
}

BergmanTestParams::BergmanTestParams(int n_, double p_, double epsilon_)
    : n(n_), p(p_), epsilon(epsilon_) {
    if (n < 0)
        throw std::invalid_argument("BergmanTestParams: n must be nonnegative");
    if (!(p > 2.0))
        throw std::invalid_argument("BergmanTestParams: requires p > 2 (kappa > 0)");
    kappa = (n + 2.0) * (0.5 - 1.0 / p);
    theta = (n + 2.0) / p;
    if (!(epsilon > 0.0 && epsilon < kappa))
        throw std::invalid_argument("BergmanTestParams: requires 0 < epsilon < kappa");
}

complexd bergman_kernel(const SiegelPoint& z, const SiegelPoint& w) {
    const int n = z.dim();
    return kernel_constant(n) * cpow(rho(z, w), -(n + 2.0));
}

complexd szego_kernel(const SiegelPoint& z, const SiegelPoint& u) {
    const int n = z.dim();
    return kernel_constant(n) / (n + 1.0) * cpow(rho(z, u), -(n + 1.0));
}

double t_alpha_kernel(const TAlphaParams& params, const SiegelPoint& z, const SiegelPoint& w) {
    const int n = params.n;
    double hw = height(w);
    double r = std::abs(rho(z, w));
    return kernel_constant(n) * std::pow(hw, params.alpha) /
           std::pow(r, n + 2.0 + params.alpha);
}

double berezin_kernel(const SiegelPoint& z, const SiegelPoint& w) {
    const int n = z.dim();
    double hz = height(z);
    double r = std::abs(rho(z, w));
    return kernel_constant(n) * std::pow(hz, n + 2.0) / std::pow(r, 2.0 * (n + 2.0));
}

namespace {

void check_t_range(const TAlphaParams& params, double t, TestCase which) {
    if (which == TestCase::CaseI) {
        if (!(t > 0.0 && t < 1.0 / params.p))
            throw std::domain_error("psi_t: CaseI requires 0 < t < 1/p");
    } else {
        if (!(t > std::max(0.0, -params.alpha) && t < 1.0 / params.q))
            throw std::domain_error("psi_t: CaseII requires max{0,-alpha} < t < 1/q");
    }
}

}  // namespace

double psi_t(const TAlphaParams& params, double t, const SiegelPoint& w, TestCase which) {
    check_t_range(params, t, which);
    const double b = (which == TestCase::CaseI) ? params.beta : params.beta_tilde;
    double hw = height(w);
    double r = std::abs(rho(w, basepoint(params.n)));
    return std::pow(hw, -t) / std::pow(r, 2.0 * (b - t));
}

double h_factor(const TAlphaParams& params, double t, double lambda, TestCase which) {
    // The Beta-matched Rayleigh law concentrates lambda against 1, where the
    // Gauss margin (t, resp. alpha+t) can be small; resolve the boundary
    // correction instead of collapsing it.
    specfun::Hyp2F1Query q;
    q.lambda = complexd(lambda, 0.0);
    q.boundary = specfun::BoundaryPolicy::ResolveCorrection;
    const double beta = params.beta;
    if (which == TestCase::CaseI) {
        q.a = q.b = beta - t;
        q.c = 2.0 * beta - t;
        double norm = gamma_ratio({beta, beta}, {2.0 * beta - t, t});
        return norm * specfun::hyp2f1(q).real();
    }
    const double bt = params.beta_tilde;
    const double n2 = params.n + 2.0;
    q.a = q.b = bt - t;
    q.c = n2 - t;
    double norm = gamma_ratio({beta, beta}, {n2 - t, params.alpha + t});
    return norm * specfun::hyp2f1(q).real();
}

double closed_T_psi_coefficient(const TAlphaParams& params, double t, TestCase which) {
    const double n2 = params.n + 2.0;
    const double beta = params.beta;
    if (which == TestCase::CaseI)
        return gamma_ratio({n2, 2.0 * beta - t - params.n - 1.0, t}, {beta, beta});
    return gamma_ratio({n2, params.alpha + t, 1.0 - t}, {beta, beta});
}

double closed_T_psi(const TAlphaParams& params, double t, const SiegelPoint& z, TestCase which) {
    check_t_range(params, t, which);
    if (which == TestCase::CaseI &&
        !((params.n + 2.0 + params.alpha) * params.p > params.n + 3.0))
        throw std::domain_error("closed_T_psi: CaseI requires (n+2+alpha)p > n+3");
    double hz = height(z);
    double r2 = std::norm(rho(basepoint(params.n), z));
    double lambda = 1.0 - hz / r2;
    return closed_T_psi_coefficient(params, t, which) * h_factor(params, t, lambda, which) *
           psi_t(params, t, z, which);
}

double closed_psi_norm(const TAlphaParams& params, double t, TestCase which) {
    check_t_range(params, t, which);
    const double n2 = params.n + 2.0;
    const double e = (which == TestCase::CaseI) ? params.p : params.q;
    const double b = (which == TestCase::CaseI) ? params.beta : params.beta_tilde;
    double a1 = 1.0 - t * e;
    double a2 = (2.0 * b - t) * e - n2;
    double a3 = (b - t) * e;
    if (!(a1 > 0.0 && a2 > 0.0 && a3 > 0.0))
        throw std::domain_error("closed_psi_norm: Gamma argument not positive");
    return 4.0 * std::pow(kPi, n2 - 1.0) * gamma_ratio({a1, a2}, {a3, a3});
}

complexd f_eps(const BergmanTestParams& params, const SiegelPoint& z) {
    const SiegelPoint bp = basepoint(params.n);
    return cpow(rho(bp, z), params.kappa - params.epsilon) *
           cpow(rho(z, bp), -params.theta - params.kappa);
}

complexd g_eps(const BergmanTestParams& params, const SiegelPoint& z) {
    const double n2 = params.n + 2.0;
    const double th = params.theta, ka = params.kappa, ep = params.epsilon;
    double coeff = gamma_ratio({th + ep, n2 - th - ep}, {th + ka, n2 - ka - th});
    return coeff * cpow(rho(z, basepoint(params.n)), -th - ep);
}

complexd bergman_proj_f_eps(const BergmanTestParams& params, const SiegelPoint& z) {
    const double n2 = params.n + 2.0;
    const double th = params.theta, ka = params.kappa, ep = params.epsilon;
    complexd rz = rho(z, basepoint(params.n));
    complexd lambda = 1.0 - 1.0 / rz;
    double coeff = gamma_ratio({n2, th + ep}, {th + ka, n2 + ep - ka});
    return coeff * specfun::hyp2f1(ep - ka, th + ep, n2 + ep - ka, lambda) *
           cpow(rz, -th - ep);
}

complexd h_eps(const BergmanTestParams& params, const SiegelPoint& z) {
    return bergman_proj_f_eps(params, z) - g_eps(params, z);
}

double f_eps_norm_p(const BergmanTestParams& params) {
    const double n2 = params.n + 2.0;
    double pe = params.p * params.epsilon;
    return 4.0 * std::pow(kPi, n2 - 1.0) *
           gamma_ratio({pe}, {0.5 * (n2 + pe), 0.5 * (n2 + pe)});
}

}  // namespace siegel::kernels
