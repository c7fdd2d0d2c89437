#include "siegel/norms.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "siegel/specfun.hpp"

namespace siegel::norms {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr std::uint64_t kDrawSalt = 0xD1B54A32D192ED03ull;

using kernels::cpow;
using kernels::ipow;
using specfun::ln_gamma;

double gr(std::initializer_list<double> num, std::initializer_list<double> den) {
    double lg = 0.0;
    for (double x : num)
        lg += ln_gamma(x);
    for (double x : den)
        lg -= ln_gamma(x);
    return std::exp(lg);
}

double uniform(mc::RngStream& g, double lo, double hi) {
    return lo + (hi - lo) * g.next_double();
}

}  // namespace

double t_alpha_norm_exact(int n, double alpha, double p) {
    if (!(p >= 1.0) || !std::isfinite(p))
        throw std::domain_error("t_alpha_norm_exact: requires 1 <= p < infinity");
    if (!(alpha > -1.0))
        throw std::domain_error("t_alpha_norm_exact: requires alpha > -1");
    if (!(p * (1.0 + alpha) > 1.0))
        throw std::domain_error("t_alpha_norm_exact: requires p(1+alpha) > 1");
    const double n2 = n + 2.0;
    return gr({n2, 1.0 + alpha - 1.0 / p, 1.0 / p}, {0.5 * (n2 + alpha), 0.5 * (n2 + alpha)});
}

BergmanBounds bergman_bounds(int n, double p) {
    if (!(p > 1.0) || !std::isfinite(p))
        throw std::domain_error("bergman_bounds: requires 1 < p < infinity");
    const double n2 = n + 2.0;
    const double q = p / (p - 1.0);
    BergmanBounds out;
    out.lower = gr({n2 / p, n2 / q}, {0.5 * n2, 0.5 * n2});
    out.upper = t_alpha_norm_exact(n, 0.0, p);
    return out;
}

double berezin_norm(int n, double p) {
    if (std::isinf(p))
        return 1.0;
    if (!(p > 1.0))
        throw std::domain_error("berezin_norm: requires 1 < p <= infinity");
    double prod = 1.0;
    for (int k = 1; k <= n + 1; ++k)
        prod *= 1.0 + 1.0 / (k * p);
    return kPi / (p * std::sin(kPi / p)) * prod;
}

double szego_lower(int n, double p) {
    if (!(p > 1.0) || !std::isfinite(p))
        throw std::domain_error("szego_lower: requires 1 < p < infinity");
    const double n1 = n + 1.0;
    const double q = p / (p - 1.0);
    return gr({n1 / p, n1 / q}, {0.5 * n1, 0.5 * n1});
}

double bergman_conjectured(int n, double p) { return bergman_bounds(n, p).lower; }
double szego_conjectured(int n, double p) { return szego_lower(n, p); }

const char* to_string(IdentityTag tag) {
    switch (tag) {
    case IdentityTag::KeylemBoundary: return "KEYLEM_BOUNDARY";
    case IdentityTag::KeylemDomain: return "KEYLEM_DOMAIN";
    case IdentityTag::SphereTriple: return "SPHERE_TRIPLE";
    case IdentityTag::BallTriple: return "BALL_TRIPLE";
    case IdentityTag::BallRadial: return "BALL_RADIAL";
    case IdentityTag::MyFormula: return "MYFORMULA";
    case IdentityTag::MyFormula2: return "MYFORMULA2";
    case IdentityTag::Forelli: return "FORELLI";
    case IdentityTag::ChangeOfVar: return "CHANGEOFV";
    }
    return "?";
}

std::optional<IdentityTag> identity_tag_from(std::string_view name) {
    for (IdentityTag tag : all_identity_tags())
        if (name == to_string(tag))
            return tag;
    return std::nullopt;
}

const std::vector<IdentityTag>& all_identity_tags() {
    static const std::vector<IdentityTag> tags = {
        IdentityTag::KeylemBoundary, IdentityTag::KeylemDomain, IdentityTag::SphereTriple,
        IdentityTag::BallTriple,     IdentityTag::BallRadial,   IdentityTag::MyFormula,
        IdentityTag::MyFormula2,     IdentityTag::Forelli,      IdentityTag::ChangeOfVar};
    return tags;
}

bool tag_supports_dimension(IdentityTag tag, int n) {
    if (tag == IdentityTag::Forelli)
        return n >= 1;
    return n >= 0;
}

namespace {

SiegelPoint random_interior(mc::RngStream& g, int n, double min_height, double max_height) {
    SiegelPoint z;
    z.z.resize(n + 1);
    double nrm = 0.0;
    for (int k = 0; k < n; ++k) {
        double re = uniform(g, -0.8, 0.8);
        double im = uniform(g, -0.8, 0.8);
        z.z[k] = complexd(re, im);
        nrm += re * re + im * im;
    }
    double h = uniform(g, min_height, max_height);
    z.z[n] = complexd(uniform(g, -0.8, 0.8), nrm + h);
    return z;
}

BallPoint random_ball(mc::RngStream& g, int n, double max_radius) {
    const int m = n + 1;
    BallPoint p;
    p.xi.resize(m);
    for (;;) {
        double nrm = 0.0;
        for (int k = 0; k < m; ++k) {
            double re = g.next_gaussian();
            double im = g.next_gaussian();
            p.xi[k] = complexd(re, im);
            nrm += re * re + im * im;
        }
        if (nrm <= 1e-300)
            continue;
        double r = max_radius * std::pow(g.next_double(), 1.0 / (2.0 * m)) / std::sqrt(nrm);
        for (auto& c : p.xi)
            c *= r;
        return p;
    }
}

BallPoint random_sphere(mc::RngStream& g, int n) {
    BallPoint p = random_ball(g, n, 1.0);
    double r = std::sqrt(norm_sq(p.xi));
    for (auto& c : p.xi)
        c /= r;
    if (std::abs(1.0 + p.xi[n]) < 1e-6)
        p.xi[n] = -p.xi[n];
    return p;
}

}  // namespace

IdentityCase IdentityCase::random(IdentityTag tag, int n, std::uint64_t seed, int draw_index) {
    if (!tag_supports_dimension(tag, n))
        throw std::invalid_argument("IdentityCase: tag not defined for this dimension");
    std::uint64_t index = (static_cast<std::uint64_t>(tag) * 64 + static_cast<std::uint64_t>(n)) *
                              1024 +
                          static_cast<std::uint64_t>(draw_index);
    mc::RngStream g(seed ^ kDrawSalt, index);

    IdentityCase c;
    c.tag = tag;
    c.n = n;
    // Ranges stay inside the preconditions of the owning identity and inside
    // the finite-variance region of the estimator that will evaluate it.
    switch (tag) {
    case IdentityTag::KeylemBoundary:
        c.theta = uniform(g, 0.75 * (n + 1.0) + 0.35, 0.75 * (n + 1.0) + 2.0);
        c.z = random_interior(g, n, 0.4, 1.8);
        break;
    case IdentityTag::KeylemDomain:
        c.gamma = uniform(g, -0.4, 1.0);
        c.theta = uniform(g, 0.5 * (n + 2.0) + 0.35, 0.5 * (n + 2.0) + 1.8);
        c.z = random_interior(g, n, 0.4, 1.8);
        break;
    case IdentityTag::SphereTriple:
        c.a = uniform(g, -1.2, 1.2);
        c.b = uniform(g, -0.9, 0.25 * (n + 1.0) - 0.1);
        c.c = uniform(g, -0.9, 0.25 * (n + 1.0) - 0.1);
        c.eta = random_ball(g, n, 0.75);
        c.zeta = random_sphere(g, n);
        break;
    case IdentityTag::BallTriple:
        c.a = uniform(g, -1.2, 1.2);
        c.b = uniform(g, -0.9, 0.25 * (n + 2.0) - 0.1);
        c.c = uniform(g, -0.9, 0.25 * (n + 2.0) - 0.1);
        c.eta = random_ball(g, n, 0.75);
        c.zeta = random_sphere(g, n);
        break;
    case IdentityTag::BallRadial:
        c.gamma = uniform(g, -0.45, 1.5);
        c.theta = uniform(g, 0.3, 2.2);
        c.eta = random_ball(g, n, 0.8);
        break;
    case IdentityTag::MyFormula:
        c.gamma = uniform(g, -0.4, 1.2);
        c.theta = uniform(g, 0.3, 2.4);
        c.z = random_interior(g, n, 0.4, 1.8);
        break;
    case IdentityTag::MyFormula2:
        c.theta = uniform(g, 0.5 * (n + 2.0) + 0.35, 0.5 * (n + 2.0) + 2.0);
        c.kappa = uniform(g, -0.9, std::min(c.theta - 0.3, 1.5));
        c.z = random_interior(g, n, 0.4, 1.8);
        break;
    case IdentityTag::Forelli:
        c.width = uniform(g, 0.7, 1.3);
        break;
    case IdentityTag::ChangeOfVar: {
        c.width = uniform(g, 0.7, 1.3);
        c.shift.zeta.resize(n);
        for (int k = 0; k < n; ++k)
            c.shift.zeta[k] = complexd(uniform(g, -0.7, 0.7), uniform(g, -0.7, 0.7));
        c.shift.t = uniform(g, -1.0, 1.0);
        break;
    }
    }
    return c;
}

std::string IdentityCase::params_text() const {
    char buf[256];
    switch (tag) {
    case IdentityTag::KeylemBoundary:
        std::snprintf(buf, sizeof buf, "theta=%.6g", theta);
        break;
    case IdentityTag::KeylemDomain:
    case IdentityTag::MyFormula:
        std::snprintf(buf, sizeof buf, "theta=%.6g gamma=%.6g", theta, gamma);
        break;
    case IdentityTag::SphereTriple:
    case IdentityTag::BallTriple:
        std::snprintf(buf, sizeof buf, "a=%.6g b=%.6g c=%.6g", a, b, c);
        break;
    case IdentityTag::BallRadial:
        std::snprintf(buf, sizeof buf, "theta=%.6g gamma=%.6g |eta|=%.6g", theta, gamma,
                      std::sqrt(norm_sq(eta.xi)));
        break;
    case IdentityTag::MyFormula2:
        std::snprintf(buf, sizeof buf, "theta=%.6g kappa=%.6g", theta, kappa);
        break;
    case IdentityTag::Forelli:
    case IdentityTag::ChangeOfVar:
        std::snprintf(buf, sizeof buf, "width=%.6g", width);
        break;
    default:
        buf[0] = '\0';
    }
    return buf;
}

bool IdentityReport::pass(double residual_floor) const {
    double mag = std::max(std::abs(closed), 1e-300);
    return residual <= std::max(5.0 * combined_stderr / mag, residual_floor);
}

namespace {

IdentityReport finish_report(mc::MonteCarloEstimate est, complexd closed, double extra_se = 0.0) {
    IdentityReport rep;
    rep.estimate = est;
    rep.closed = closed;
    rep.combined_stderr = std::sqrt(est.std_error * est.std_error + extra_se * extra_se);
    rep.residual = std::abs(est.value - closed) / std::max(std::abs(closed), 1e-300);
    return rep;
}

complexd triple_integrand(const IdentityCase& c, const BallPoint& omega) {
    complexd d1 = 1.0 - hermitian_dot(c.eta.xi, omega.xi);
    complexd d2 = 1.0 - hermitian_dot(c.zeta.xi, omega.xi);
    return std::pow(d1, -c.a) * std::pow(d2, -c.b) * std::pow(std::conj(d2), -c.c);
}

}  // namespace

IdentityReport verify_identity(const IdentityCase& c, std::size_t count, std::uint64_t seed,
                               int workers) {
    const int n = c.n;
    const double n1 = n + 1.0, n2 = n + 2.0;
    const SiegelPoint bp = basepoint(n);

    switch (c.tag) {
    case IdentityTag::KeylemBoundary: {
        const SiegelPoint z = c.z;
        const double expo = n1 + c.theta;
        auto f = [z, expo](const SiegelPoint& u) -> complexd {
            return std::pow(std::abs(rho(z, u)), -expo);
        };
        auto est = mc::integrate_boundary(f, n, count, seed, workers);
        double closed = 4.0 * std::pow(kPi, n1) * gr({c.theta}, {0.5 * (n1 + c.theta), 0.5 * (n1 + c.theta)}) *
                        std::pow(height(z), -c.theta);
        return finish_report(est, closed);
    }
    case IdentityTag::KeylemDomain: {
        const SiegelPoint z = c.z;
        const double g0 = c.gamma, expo = n2 + c.theta + c.gamma;
        auto f = [z, g0, expo](const SiegelPoint& w) -> complexd {
            return std::pow(height(w), g0) * std::pow(std::abs(rho(z, w)), -expo);
        };
        double s = std::max(0.0, -c.gamma);
        mc::SamplerSpec spec{s > 0.0 ? mc::SamplerKind::RadialBetaBall
                                     : mc::SamplerKind::UniformBall,
                             n, s, seed};
        auto mode = s > 0.0 ? mc::WeightMode::beta(s) : mc::WeightMode::plain();
        auto est = mc::integrate_siegel(f, n, spec, count, mode, workers);
        double closed = 4.0 * std::pow(kPi, n1) *
                        gr({1.0 + c.gamma, c.theta},
                           {0.5 * (n2 + c.theta + c.gamma), 0.5 * (n2 + c.theta + c.gamma)}) *
                        std::pow(height(z), -c.theta);
        return finish_report(est, closed);
    }
    case IdentityTag::SphereTriple: {
        auto f = [&c](const BallPoint& om) { return triple_integrand(c, om); };
        auto est = mc::integrate_sphere(f, n, count, seed, workers);
        complexd closed = gr({n1, n1 - c.b - c.c}, {n1 - c.b, n1 - c.c}) *
                          specfun::hyp2f1(c.a, c.c, n1 - c.b, hermitian_dot(c.eta.xi, c.zeta.xi));
        return finish_report(est, closed);
    }
    case IdentityTag::BallTriple: {
        auto f = [&c](const BallPoint& xi) { return triple_integrand(c, xi); };
        auto est = mc::integrate_ball(f, n, count, seed, workers);
        complexd closed = std::pow(kPi, n1) * gr({n2 - c.b - c.c}, {n2 - c.b, n2 - c.c}) *
                          specfun::hyp2f1(c.a, c.c, n2 - c.b, hermitian_dot(c.eta.xi, c.zeta.xi));
        return finish_report(est, closed);
    }
    case IdentityTag::BallRadial: {
        const double g0 = c.gamma, th = c.theta;
        const BallPoint eta = c.eta;
        auto f = [eta, g0, th](const BallPoint& xi) -> complexd {
            double one_m = 1.0 - norm_sq(xi.xi);
            complexd d = 1.0 - hermitian_dot(eta.xi, xi.xi);
            return std::pow(one_m, g0) * std::pow(std::abs(d), -2.0 * th);
        };
        auto est = mc::integrate_ball(f, n, count, seed, workers);
        complexd closed =
            std::pow(kPi, n1) * gr({1.0 + c.gamma}, {n2 + c.gamma}) *
            specfun::hyp2f1(th, th, n2 + c.gamma, complexd(norm_sq(eta.xi), 0.0));
        return finish_report(est, closed);
    }
    case IdentityTag::MyFormula: {
        const SiegelPoint z = c.z;
        const SiegelPoint base = bp;
        const double g0 = c.gamma, th = c.theta, wexp = 2.0 * (n2 + c.gamma - c.theta);
        auto f = [z, base, g0, th, wexp](const SiegelPoint& w) -> complexd {
            return std::pow(height(w), g0) * std::pow(std::abs(rho(z, w)), -2.0 * th) *
                   std::pow(std::abs(rho(w, base)), -wexp);
        };
        double s = std::max(0.0, -c.gamma);
        mc::SamplerSpec spec{s > 0.0 ? mc::SamplerKind::RadialBetaBall
                                     : mc::SamplerKind::UniformBall,
                             n, s, seed};
        auto mode = s > 0.0 ? mc::WeightMode::beta(s) : mc::WeightMode::plain();
        auto est = mc::integrate_siegel(f, n, spec, count, mode, workers);
        double lambda = 1.0 - height(z) / std::norm(rho(bp, z));
        complexd closed = 4.0 * std::pow(kPi, n1) * gr({1.0 + c.gamma}, {n2 + c.gamma}) *
                          specfun::hyp2f1(th, th, n2 + c.gamma, complexd(lambda, 0.0)) *
                          std::pow(std::abs(rho(z, bp)), -2.0 * th);
        return finish_report(est, closed);
    }
    case IdentityTag::MyFormula2: {
        const SiegelPoint z = c.z;
        const SiegelPoint base = bp;
        const double th = c.theta, ka = c.kappa;
        const int nn = n;
        auto f = [z, base, th, ka, nn](const SiegelPoint& w) -> complexd {
            complexd k1 = ipow(rho(z, w), nn + 2);
            complexd k2 = cpow(rho(base, w), ka);
            complexd k3 = cpow(rho(w, base), th - ka);
            return 1.0 / (k1 * k2 * k3);
        };
        mc::SamplerSpec spec{mc::SamplerKind::UniformBall, n, 0.0, seed};
        auto est = mc::integrate_siegel(f, n, spec, count, mc::WeightMode::plain(), workers);
        complexd rz = rho(z, bp);
        complexd closed = 4.0 * std::pow(kPi, n1) * gr({th}, {th - ka, n2 + ka}) *
                          specfun::hyp2f1(th, ka, n2 + ka, 1.0 - 1.0 / rz) * cpow(rz, -th);
        return finish_report(est, closed);
    }
    case IdentityTag::Forelli: {
        const double w2 = c.width * c.width;
        auto boundary_f = [w2](const SiegelPoint& u) -> complexd {
            double s = 0.0;
            for (std::size_t k = 1; k < u.z.size(); ++k)
                s += std::norm(u.z[k]);
            return std::exp(-s / w2);
        };
        auto domain_f = [w2](const SiegelPoint& w) -> complexd {
            return std::exp(-norm_sq(w.z) / w2);
        };
        auto bnd = mc::integrate_boundary(boundary_f, n, count, seed, workers);
        mc::SamplerSpec spec{mc::SamplerKind::UniformBall, n - 1, 0.0, seed + 1};
        auto dom =
            mc::integrate_siegel(domain_f, n - 1, spec, count, mc::WeightMode::plain(), workers);
        complexd closed = kPi * dom.value;
        return finish_report(bnd, closed, kPi * dom.std_error);
    }
    case IdentityTag::ChangeOfVar: {
        const HeisenbergElement inv = heis_inverse(c.shift);
        const double w2 = c.width * c.width;
        auto f = [inv, w2](const SiegelPoint& u) -> complexd {
            SiegelPoint v = heis_apply(inv, u);
            double s = 0.0;
            const int m = v.dim();
            for (int k = 0; k < m; ++k)
                s += std::norm(v.z[k]);
            double t = v.z[m].real();
            return std::exp(-(s + t * t) / w2);
        };
        auto est = mc::integrate_boundary(f, n, count, seed, workers);
        // Gaussian mass of d-beta: (pi w^2)^n * w sqrt(pi).
        complexd closed = std::pow(kPi * w2, n) * c.width * std::sqrt(kPi);
        return finish_report(est, closed);
    }
    }
    throw std::logic_error("verify_identity: unhandled tag");
}

SchurReport schur_certificate(const kernels::TAlphaParams& params, const SiegelPoint& point,
                              SchurSide side, std::size_t count, std::uint64_t seed,
                              int workers) {
    if (!(params.p > 1.0))
        throw std::domain_error("schur_certificate: requires 1 < p < infinity");
    if (!params.norm_condition())
        throw std::domain_error("schur_certificate: requires p(1+alpha) > 1");
    const int n = params.n;
    const double C = t_alpha_norm_exact(n, params.alpha, params.p);

    // Row: integrate K(z,w) g(w)^q over w; column: K(z,w) g(z)^p over z.
    // Both are height^{g_int} |rho(center,.)|^{-(n+2+theta_int+g_int)} integrals.
    double g_int, theta_int, closed;
    if (side == SchurSide::Row) {
        g_int = params.alpha - 1.0 / params.p;
        theta_int = 1.0 / params.p;
        closed = C * std::pow(height(point), -1.0 / params.p);
    } else {
        g_int = -1.0 / params.q;
        theta_int = params.alpha + 1.0 / params.q;
        closed = C * std::pow(height(point), -1.0 / params.q);
    }

    // Importance exponents sit strictly inside the integrand's: the weight
    // height^{dg} |rho|^{-(dth+dg)} is then bounded on the domain.
    const double theta0 = 0.7 * theta_int;
    const double gamma0 = g_int - std::min(0.25, 0.5 * (g_int + 1.0));
    const double kconst = kernels::kernel_constant(n);
    const SiegelPoint center = point;
    const double alpha = params.alpha;
    const double hw_pow = g_int;
    const double rho_exp = n + 2.0 + alpha;

    mc::HeightAwareIntegrand f;
    if (side == SchurSide::Row) {
        f = [center, kconst, hw_pow, rho_exp](const SiegelPoint& w, double hw) -> complexd {
            return kconst * std::pow(hw, hw_pow) *
                   std::pow(std::abs(rho(center, w)), -rho_exp);
        };
    } else {
        const double halpha = std::pow(height(point), alpha);
        f = [center, kconst, hw_pow, rho_exp, halpha](const SiegelPoint& zz,
                                                      double hz) -> complexd {
            return kconst * halpha * std::pow(hz, hw_pow) *
                   std::pow(std::abs(rho(zz, center)), -rho_exp);
        };
    }
    auto est =
        mc::integrate_siegel_rho_weighted(f, n, point, theta0, gamma0, count, seed, workers);

    SchurReport rep;
    rep.estimate = est;
    rep.closed = closed;
    rep.deviation_sigmas =
        std::abs(est.value.real() - closed) / std::max(est.std_error, 1e-300);
    rep.pass = rep.deviation_sigmas <= 3.0;
    return rep;
}

mc::MonteCarloEstimate rayleigh_lower_T(const kernels::TAlphaParams& params, double t,
                                        std::size_t count, std::uint64_t seed, int workers) {
    using kernels::TestCase;
    const TestCase which = kernels::dispatch_case(params);
    const int n = params.n;
    const double n2 = n + 2.0;
    const double e = (which == TestCase::CaseI) ? params.p : params.q;
    const double b = (which == TestCase::CaseI) ? params.beta : params.beta_tilde;
    if (which == TestCase::CaseI) {
        if (!(t > 0.0 && t < 1.0 / params.p))
            throw std::domain_error("rayleigh_lower_T: CaseI requires 0 < t < 1/p");
    } else {
        if (!(t > std::max(0.0, -params.alpha) && t < 1.0 / params.q))
            throw std::domain_error("rayleigh_lower_T: CaseII requires max{0,-alpha} < t < 1/q");
    }

    const double s = t * e;  // matched radial exponent, < 1
    const double env_pow = 2.0 * b * e - 2.0 * n2;
    const double coeff = kernels::closed_T_psi_coefficient(params, t, which);
    const double denom = kernels::closed_psi_norm(params, t, which);
    const double cbeta =
        std::pow(kPi, n2 - 1.0) * std::exp(ln_gamma(1.0 - s) - ln_gamma(n2 - s));

    // ||T psi_t||^e pulls back to 4 coeff^e cbeta E[H^e env] under the
    // matched law; the denominator is the closed norm.
    const kernels::TAlphaParams p_copy = params;
    auto summand = [p_copy, which, t, env_pow, e](const BallPoint& xi) -> complexd {
        double lambda = norm_sq(xi.xi);
        double H = kernels::h_factor(p_copy, t, lambda, which);
        double env = std::pow(std::abs(1.0 + xi.xi.back()), env_pow);
        return std::pow(H, e) * env;
    };
    mc::SamplerSpec spec{mc::SamplerKind::RadialBetaBall, n, s, seed};
    auto est = mc::sampler_expectation(summand, spec, count, workers);

    const double mean = est.value.real();
    if (!(mean > 0.0))
        throw std::runtime_error("rayleigh_lower_T: nonpositive summand mean");
    const double ratio = coeff * std::pow(4.0 * cbeta * mean / denom, 1.0 / e);

    mc::MonteCarloEstimate out;
    out.value = complexd(ratio, 0.0);
    out.std_error = ratio * est.std_error / (e * mean);
    out.samples = est.samples;
    out.seed = seed;
    return out;
}

BergmanLowerReport rayleigh_lower_bergman(const kernels::BergmanTestParams& params,
                                          std::size_t count, std::uint64_t seed, int workers) {
    const int n = params.n;
    const double n2 = n + 2.0;
    const double th = params.theta, ka = params.kappa, ep = params.epsilon;

    BergmanLowerReport rep;
    rep.ratio_g = gr({th + ep, n2 - th - ep}, {th + ka, n2 - ka - th});

    const double fnorm = kernels::f_eps_norm_p(params);
    const kernels::BergmanTestParams p_copy = params;
    const double p = params.p;
    auto integrand = [p_copy, p](const SiegelPoint& z) -> complexd {
        return std::pow(std::abs(kernels::h_eps(p_copy, z)), p);
    };
    mc::SamplerSpec spec{mc::SamplerKind::UniformBall, n, 0.0, seed};
    auto est = mc::integrate_siegel(integrand, n, spec, count, mc::WeightMode::plain(), workers);

    const double hmass = est.value.real();
    rep.ratio_h.samples = est.samples;
    rep.ratio_h.seed = seed;
    if (hmass > 0.0) {
        double r = std::pow(hmass / fnorm, 1.0 / p);
        rep.ratio_h.value = complexd(r, 0.0);
        rep.ratio_h.std_error = r * est.std_error / (p * hmass);
    } else {
        rep.ratio_h.value = complexd(0.0, 0.0);
        rep.ratio_h.std_error = 0.0;
    }
    rep.net_lower = rep.ratio_g - rep.ratio_h.value.real();
    return rep;
}

BridgeReport bridge_check(int n, double p, std::size_t count, std::uint64_t seed, int workers) {
    if (n < 1)
        throw std::invalid_argument("bridge_check: requires n >= 1");
    if (!(p > 1.0) || !std::isfinite(p))
        throw std::invalid_argument("bridge_check: requires 1 < p < infinity");

    const double pi_inv_p = std::pow(kPi, -1.0 / p);

    // Default profile f(w) = exp(-|w|^2) on U^{n-1}; g = pi^{-1/p} f(last n coords).
    auto f_domain = [](const SiegelPoint& w) -> complexd { return std::exp(-norm_sq(w.z)); };
    auto g_boundary = [pi_inv_p](const SiegelPoint& u) -> complexd {
        double s = 0.0;
        for (std::size_t k = 1; k < u.z.size(); ++k)
            s += std::norm(u.z[k]);
        return pi_inv_p * std::exp(-s);
    };

    BridgeReport rep;

    // (i) ||g||_{L^p(bU^n)}^p versus ||f||_{L^p(U^{n-1})}^p.
    const double pp = p;
    auto gp = [g_boundary, pp](const SiegelPoint& u) -> complexd {
        return std::pow(std::abs(g_boundary(u)), pp);
    };
    auto fp = [f_domain, pp](const SiegelPoint& w) -> complexd {
        return std::pow(std::abs(f_domain(w)), pp);
    };
    rep.boundary_norm_p = mc::integrate_boundary(gp, n, count, seed, workers);
    mc::SamplerSpec spec{mc::SamplerKind::UniformBall, n - 1, 0.0, seed + 1};
    rep.domain_norm_p =
        mc::integrate_siegel(fp, n - 1, spec, count, mc::WeightMode::plain(), workers);
    double se = std::sqrt(rep.boundary_norm_p.std_error * rep.boundary_norm_p.std_error +
                          rep.domain_norm_p.std_error * rep.domain_norm_p.std_error);
    rep.norm_deviation_sigmas =
        std::abs(rep.boundary_norm_p.value.real() - rep.domain_norm_p.value.real()) /
        std::max(se, 1e-300);

    // (ii) (C g)((0, z~)) = pi^{-1/p} (P f)(z~) at the base point and two
    // random points of U^{n-1}.
    std::vector<SiegelPoint> test_points;
    test_points.push_back(basepoint(n - 1));
    mc::RngStream g(seed ^ kDrawSalt, 7001);
    test_points.push_back(random_interior(g, n - 1, 0.5, 1.5));
    test_points.push_back(random_interior(g, n - 1, 0.5, 1.5));

    bool all_pass = rep.norm_deviation_sigmas <= 3.0;
    for (std::size_t j = 0; j < test_points.size(); ++j) {
        const SiegelPoint& zt = test_points[j];
        SiegelPoint z_full;
        z_full.z.assign(n + 1, complexd(0.0, 0.0));
        for (int k = 0; k <= n - 1; ++k)
            z_full.z[k + 1] = zt.z[k];

        BridgePointCheck chk;
        auto szego = mc::apply_szego_boundary(n, g_boundary, z_full, count,
                                              seed + 100 + 2 * j, workers);
        chk.szego_side = szego.value;
        chk.szego_stderr = szego.std_error;

        auto proj_integrand = [zt, f_domain](const SiegelPoint& w) -> complexd {
            return kernels::bergman_kernel(zt, w) * f_domain(w);
        };
        mc::SamplerSpec pspec{mc::SamplerKind::UniformBall, n - 1, 0.0, seed + 101 + 2 * j};
        auto proj = mc::integrate_siegel(proj_integrand, n - 1, pspec, count,
                                         mc::WeightMode::plain(), workers);
        chk.bergman_side = pi_inv_p * proj.value;
        chk.bergman_stderr = pi_inv_p * proj.std_error;

        double cse = std::sqrt(chk.szego_stderr * chk.szego_stderr +
                               chk.bergman_stderr * chk.bergman_stderr);
        chk.deviation_sigmas =
            std::abs(chk.szego_side - chk.bergman_side) / std::max(cse, 1e-300);
        all_pass = all_pass && chk.deviation_sigmas <= 3.0;
        rep.points.push_back(chk);
    }
    rep.pass = all_pass;
    return rep;
}

const char* to_string(NormSource source) {
    switch (source) {
    case NormSource::Bergman: return "bergman";
    case NormSource::Szego: return "szego";
    case NormSource::TAlpha: return "talpha";
    case NormSource::Berezin: return "berezin";
    }
    return "?";
}

std::vector<NormRow> norm_table(const std::vector<int>& ns, std::optional<double> alpha,
                                const std::vector<double>& p_grid) {
    std::vector<NormRow> rows;
    for (int n : ns) {
        for (double p : p_grid) {
            if (!(p > 1.0) || !std::isfinite(p))
                throw std::invalid_argument("norm_table: p grid must lie in (1, infinity)");
            BergmanBounds bb = bergman_bounds(n, p);
            NormRow bergman;
            bergman.n = n;
            bergman.p = p;
            bergman.lower = bb.lower;
            bergman.upper = bb.upper;
            bergman.conjectured = bb.lower;
            bergman.source = NormSource::Bergman;
            rows.push_back(bergman);

            NormRow szego;
            szego.n = n;
            szego.p = p;
            szego.lower = szego_lower(n, p);
            szego.conjectured = szego.lower;
            szego.source = NormSource::Szego;
            rows.push_back(szego);

            NormRow berezin;
            berezin.n = n;
            berezin.p = p;
            berezin.exact = berezin_norm(n, p);
            berezin.source = NormSource::Berezin;
            rows.push_back(berezin);

            if (alpha && p * (1.0 + *alpha) > 1.0) {
                NormRow talpha;
                talpha.n = n;
                talpha.p = p;
                talpha.alpha = *alpha;
                talpha.exact = t_alpha_norm_exact(n, *alpha, p);
                talpha.source = NormSource::TAlpha;
                rows.push_back(talpha);
            }
        }
    }
    return rows;
}

}  // namespace siegel::norms
