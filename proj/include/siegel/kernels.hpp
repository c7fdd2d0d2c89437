#pragma once

#include "siegel/geometry.hpp"

namespace siegel::kernels {

/// Parameters of the T_alpha operator family acting on L^p.
/// Derived quantities are fixed at construction:
///   q = p/(p-1), beta = (n+2+alpha)/2, beta_tilde = (n+2-alpha)/2.
struct TAlphaParams {
    int n;
    double alpha;
    double p;
    double q;
    double beta;
    double beta_tilde;

    TAlphaParams(int n, double alpha, double p);

    /// p(1+alpha) > 1, required by every norm formula.
    bool norm_condition() const { return p * (1.0 + alpha) > 1.0; }
};

/// Which extremal family drives the lower bound:
/// CaseI when (n+2+alpha) p > n+3, CaseII otherwise (ties to CaseII).
enum class TestCase { CaseI, CaseII };

TestCase dispatch_case(const TAlphaParams& params);

/// Parameters of the Bergman extremal family of test functions.
/// kappa = (n+2)(1/2 - 1/p) and theta = (n+2)/p, so theta+kappa = (n+2)/2.
/// Requires p > 2 (kappa > 0) and 0 < epsilon < kappa.
struct BergmanTestParams {
    int n;
    double p;
    double epsilon;
    double kappa;
    double theta;

    BergmanTestParams(int n, double p, double epsilon);
};

/// Bergman kernel (n+1)!/(4 pi^{n+1}) * rho(z,w)^{-n-2}, both points interior.
complexd bergman_kernel(const SiegelPoint& z, const SiegelPoint& w);

/// Cauchy-Szego kernel n!/(4 pi^{n+1}) * rho(z,u)^{-n-1}, z interior, u boundary.
complexd szego_kernel(const SiegelPoint& z, const SiegelPoint& u);

/// T_alpha kernel (n+1)!/(4 pi^{n+1}) * height(w)^alpha / |rho(z,w)|^{n+2+alpha}.
double t_alpha_kernel(const TAlphaParams& params, const SiegelPoint& z, const SiegelPoint& w);

/// Berezin kernel (n+1)!/(4 pi^{n+1}) * height(z)^{n+2} / |rho(z,w)|^{2(n+2)}.
double berezin_kernel(const SiegelPoint& z, const SiegelPoint& w);

/// Extremal weight psi_t(w) = height(w)^{-t} / |rho(w,i)|^{2(beta-t)}; CaseII
/// replaces beta by beta_tilde.  CaseI needs 0 < t < 1/p, CaseII
/// max{0,-alpha} < t < 1/q.
double psi_t(const TAlphaParams& params, double t, const SiegelPoint& w,
             TestCase which = TestCase::CaseI);

/// H(t,lambda) = Gamma(beta)^2/(Gamma(2beta-t)Gamma(t)) * 2F1(beta-t,beta-t;2beta-t;lambda),
/// normalized so H(t,1) = 1; CaseII uses the adjoint analogue with the same
/// normalization.  Increasing in lambda on [0,1).
double h_factor(const TAlphaParams& params, double t, double lambda,
                TestCase which = TestCase::CaseI);

/// Leading constant of the closed form: (n+1)! Gamma(2beta-t-n-1) Gamma(t) / Gamma(beta)^2
/// for CaseI, (n+1)! Gamma(alpha+t) Gamma(1-t) / Gamma(beta)^2 for CaseII.
double closed_T_psi_coefficient(const TAlphaParams& params, double t,
                                TestCase which = TestCase::CaseI);

/// Closed form of (T_alpha psi_t)(z) (CaseI) or (T_alpha^* psi~_t)(z) (CaseII):
///   coefficient * H(t, 1 - height(z)/|rho(i,z)|^2) * psi_t(z).
double closed_T_psi(const TAlphaParams& params, double t, const SiegelPoint& z,
                    TestCase which = TestCase::CaseI);

/// Closed p-th power norm of psi_t:
///   ||psi_t||_p^p = 4 pi^{n+1} Gamma(1-tp) Gamma((2beta-t)p-n-2) / Gamma((beta-t)p)^2,
/// with (q, beta_tilde) in place of (p, beta) for CaseII.
double closed_psi_norm(const TAlphaParams& params, double t,
                       TestCase which = TestCase::CaseI);

/// Extremal function f_eps(z) = rho(i,z)^{kappa-eps} * rho(z,i)^{-theta-kappa}.
complexd f_eps(const BergmanTestParams& params, const SiegelPoint& z);

/// g_eps(z) = Gamma(theta+eps)Gamma(n+2-theta-eps) / (Gamma(theta+kappa)Gamma(n+2-kappa-theta))
///            * rho(z,i)^{-theta-eps}.
complexd g_eps(const BergmanTestParams& params, const SiegelPoint& z);

/// Closed form of the Bergman projection of f_eps:
///   (n+1)! Gamma(theta+eps) / (Gamma(theta+kappa) Gamma(n+2+eps-kappa))
///   * 2F1(eps-kappa, theta+eps; n+2+eps-kappa; 1 - 1/rho(z,i)) * rho(z,i)^{-theta-eps}.
complexd bergman_proj_f_eps(const BergmanTestParams& params, const SiegelPoint& z);

/// h_eps = (closed projection of f_eps) - g_eps.
complexd h_eps(const BergmanTestParams& params, const SiegelPoint& z);

/// ||f_eps||_p^p = 4 pi^{n+1} Gamma(p eps) / Gamma((n+2+p eps)/2)^2.
double f_eps_norm_p(const BergmanTestParams& params);

/// (n+1)!/(4 pi^{n+1}), the kernel normalization constant.
double kernel_constant(int n);

/// Principal-branch complex power, asserting Re(base) > 0.
complexd cpow(complexd base, double exponent);

/// Integer complex power by repeated multiplication (branch-free).
complexd ipow(complexd base, int exponent);

}  // namespace siegel::kernels
