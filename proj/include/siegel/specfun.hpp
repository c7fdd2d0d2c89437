#pragma once

#include <complex>
#include <stdexcept>

namespace siegel::specfun {

using complexd = std::complex<double>;

/// Thrown when a series or quadrature fails to reach its tolerance.
class NonConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Natural logarithm of Gamma(x) for x > 0.
/// Relative error below 1e-13 on [1e-3, 1e3].
double ln_gamma(double x);

/// Gamma(x) for arbitrary non-pole real x (reflection used for x < 0).
/// Internal workhorse for connection coefficients; callers guard poles.
double gamma_signed(double x);

/// 1/Gamma(x), entire in x; returns 0 at the poles of Gamma.
double rgamma(double x);

/// Pochhammer symbol a(a+1)...(a+k-1), with (a)_0 = 1.
double pochhammer(double a, int k);

/// Method hint for arguments within 1e-6 of the unit point: collapse to the
/// Gauss sum (the default; the dropped correction is O(|1-lambda|^{c-a-b})),
/// or resolve that correction through the expansion about lambda = 1.
/// Resolving matters when c-a-b is small, where the correction decays very
/// slowly; callers integrating against boundary-concentrated measures need it.
enum class BoundaryPolicy { CollapseToGauss, ResolveCorrection };

/// Parameters and argument of the Gauss hypergeometric function.
struct Hyp2F1Query {
    double a = 0.0;
    double b = 0.0;
    double c = 1.0;
    complexd lambda{0.0, 0.0};
    BoundaryPolicy boundary = BoundaryPolicy::CollapseToGauss;
};

/// 2F1(a,b;c;lambda) on the closed unit disk.
///
/// Dispatch: direct power series for |lambda| <= 0.5; within 1e-6 of the
/// unit point the value reduces to the Gauss sum per the BoundaryPolicy
/// (the Euler transform flips a negative margin c-a-b first, so the sum
/// used always has positive margin); the ring in between goes through the
/// expansion about lambda = 1; a Pfaff map covers the Re lambda < 0.35
/// part of the disk.  Series truncation: running term below 1e-15 of the
/// partial sum for 3 consecutive terms; non-convergence after 1e6 terms.
complexd hyp2f1(const Hyp2F1Query& q);
complexd hyp2f1(double a, double b, double c, complexd lambda);

/// 2F1 at lambda = 1: Gamma(c)Gamma(c-a-b) / (Gamma(c-a)Gamma(c-b)).
/// Requires c-a-b > 0 and positive Gamma arguments.
double gauss_value(double a, double b, double c);

/// Euler integral form of 2F1, by adaptive Gauss-Kronrod quadrature.
/// Requires c > b > 0 and |arg(1-lambda)| < pi.  Endpoint singularities
/// with exponent in (-1,0) are removed by t = u^2 substitutions.
/// Independent of the series path; tolerance 1e-10 (abs+rel).
complexd hyp2f1_integral_oracle(double a, double b, double c, complexd lambda);

/// C(a,b,c) = |a| * max{ 2^(-a-1), G(c)G(c-a-b-1) / (G(c-a-1)G(c-b)) },
/// the Lipschitz constant bounding |2F1(a,b;c;lambda) - 2F1(a,b;c;1)|
/// by C |1-lambda| on the unit disk.  Requires c > max{a+b+1, a+1, b}.
double lemma_error_constant(double a, double b, double c);

}  // namespace siegel::specfun
