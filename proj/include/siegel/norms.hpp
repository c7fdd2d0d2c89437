#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "siegel/kernels.hpp"
#include "siegel/mcquad.hpp"

namespace siegel::norms {

/// ||T_alpha||_{p->p} = (n+1)! Gamma(1+alpha-1/p) Gamma(1/p) / Gamma((n+2+alpha)/2)^2.
/// Requires 1 <= p < infinity, alpha > -1 and p(1+alpha) > 1.
double t_alpha_norm_exact(int n, double alpha, double p);

struct BergmanBounds {
    double lower;
    double upper;
};

/// Two-sided bounds for the Bergman projection norm on L^p, 1 < p < infinity:
/// lower = Gamma((n+2)/p)Gamma((n+2)/q)/Gamma((n+2)/2)^2, upper = ||T_0||.
BergmanBounds bergman_bounds(int n, double p);

/// ||B||_{p->p} = pi/(p sin(pi/p)) * prod_{k=1}^{n+1} (1 + 1/(kp)); 1 at p = infinity.
double berezin_norm(int n, double p);

/// Lower bound for the Cauchy-Szego projection norm:
/// Gamma((n+1)/p)Gamma((n+1)/q)/Gamma((n+1)/2)^2.
double szego_lower(int n, double p);

/// Conjectured exact values (the lower bounds, sharp at p = 2).
double bergman_conjectured(int n, double p);
double szego_conjectured(int n, double p);

/// The closed-form integral identities paired with their MC estimates.
enum class IdentityTag {
    KeylemBoundary,  // boundary integral of |rho(z,u)|^{-n-1-theta}
    KeylemDomain,    // domain integral of height^gamma |rho(z,w)|^{-n-2-theta-gamma}
    SphereTriple,    // sphere integral of three (1 - <.,.>) powers
    BallTriple,      // ball integral of three (1 - <.,.>) powers
    BallRadial,      // ball integral of (1-|xi|^2)^gamma |1-eta.conj(xi)|^{-2 theta}
    MyFormula,       // domain integral with the rho(.,i) weight
    MyFormula2,      // holomorphic-kernel domain integral, complex valued
    Forelli,         // boundary integral of a function of fewer variables
    ChangeOfVar,     // boundary measure pushed to the sphere
};

const char* to_string(IdentityTag tag);
std::optional<IdentityTag> identity_tag_from(std::string_view name);
const std::vector<IdentityTag>& all_identity_tags();

/// Forelli needs n >= 1; everything else covers all n >= 0.
bool tag_supports_dimension(IdentityTag tag, int n);

/// One concrete instance of an identity: parameters plus evaluation points,
/// drawn from documented in-precondition ranges on which the pinned
/// estimators have finite variance.
struct IdentityCase {
    IdentityTag tag = IdentityTag::KeylemBoundary;
    int n = 0;
    double theta = 0.0;
    double gamma = 0.0;
    double a = 0.0, b = 0.0, c = 0.0;
    double kappa = 0.0;
    double width = 1.0;  // Gaussian width of the Forelli/ChangeOfVar test function
    SiegelPoint z;
    BallPoint eta;
    BallPoint zeta;
    HeisenbergElement shift;

    static IdentityCase random(IdentityTag tag, int n, std::uint64_t seed, int draw_index);

    /// Key=value rendering of the active parameters, for reports.
    std::string params_text() const;
};

struct IdentityReport {
    mc::MonteCarloEstimate estimate;
    complexd closed{0.0, 0.0};
    double residual = 0.0;         // |mc - closed| / max(|closed|, tiny)
    double combined_stderr = 0.0;  // includes the second route for dual-MC cases

    bool pass(double residual_floor = 1e-2) const;
};

IdentityReport verify_identity(const IdentityCase& c, std::size_t count, std::uint64_t seed,
                               int workers = 1);

enum class SchurSide { Row, Column };

struct SchurReport {
    mc::MonteCarloEstimate estimate;
    double closed = 0.0;
    double deviation_sigmas = 0.0;
    bool pass = false;
};

/// Schur-test certificate with weight g = height^{-1/(pq)}: the row integral
/// int K(z,w) g(w)^q dV(w) (or its column transpose) equals
/// t_alpha_norm_exact * g^{q or p} exactly; the MC side uses the rho-kernel
/// importance sampler, whose normalizer rests on the independently verified
/// KeylemDomain identity.
SchurReport schur_certificate(const kernels::TAlphaParams& params, const SiegelPoint& point,
                              SchurSide side, std::size_t count, std::uint64_t seed,
                              int workers = 1);

/// Rayleigh-quotient estimate ||T_alpha psi_t||_p / ||psi_t||_p.  The
/// numerator uses importance sampling matched to |psi_t|^p (squared-radius
/// Beta(n+1, 1-tp) law) so the summand is the bounded H^p envelope product;
/// the denominator is the closed norm, never MC.  CaseII runs the adjoint
/// family in exponent q.  Value and delta-method standard error returned.
mc::MonteCarloEstimate rayleigh_lower_T(const kernels::TAlphaParams& params, double t,
                                        std::size_t count, std::uint64_t seed, int workers = 1);

struct BergmanLowerReport {
    double ratio_g = 0.0;              // ||g_eps|| / ||f_eps||, closed form
    mc::MonteCarloEstimate ratio_h;    // ||h_eps|| / ||f_eps||, MC over closed
    double net_lower = 0.0;            // ratio_g - ratio_h
};

BergmanLowerReport rayleigh_lower_bergman(const kernels::BergmanTestParams& params,
                                          std::size_t count, std::uint64_t seed,
                                          int workers = 1);

struct BridgePointCheck {
    complexd szego_side{0.0, 0.0};
    double szego_stderr = 0.0;
    complexd bergman_side{0.0, 0.0};  // already scaled by pi^{-1/p}
    double bergman_stderr = 0.0;
    double deviation_sigmas = 0.0;
};

struct BridgeReport {
    mc::MonteCarloEstimate boundary_norm_p;  // ||g||_{L^p(bU^n)}^p
    mc::MonteCarloEstimate domain_norm_p;    // ||f||_{L^p(U^{n-1})}^p
    double norm_deviation_sigmas = 0.0;
    std::vector<BridgePointCheck> points;
    bool pass = false;
};

/// Restriction/extension bridge: g = pi^{-1/p} (extension of f) satisfies
/// ||g||_{L^p(bU^n)} = ||f||_{L^p(U^{n-1})} and the Cauchy-Szego integral of
/// g at (0, z~) equals pi^{-1/p} times the Bergman projection of f at z~.
/// Default f(w) = exp(-|w|^2).  Requires n >= 1, 1 < p < infinity.
BridgeReport bridge_check(int n, double p, std::size_t count, std::uint64_t seed,
                          int workers = 1);

enum class NormSource { Bergman, Szego, TAlpha, Berezin };

const char* to_string(NormSource source);

struct NormRow {
    int n = 0;
    double p = 2.0;
    std::optional<double> alpha;
    std::optional<double> lower;
    std::optional<double> upper;
    std::optional<double> exact;
    std::optional<double> conjectured;
    NormSource source = NormSource::Bergman;
};

/// One row per (n, p) and source; T_alpha rows only when alpha is given and
/// p(1+alpha) > 1.
std::vector<NormRow> norm_table(const std::vector<int>& ns, std::optional<double> alpha,
                                const std::vector<double>& p_grid);

}  // namespace siegel::norms
