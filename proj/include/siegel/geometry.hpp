#pragma once

#include <complex>
#include <vector>

namespace siegel {

using complexd = std::complex<double>;

/// Point of the Siegel upper half-space (or its boundary) in C^{n+1}.
/// z = (z', z_{n+1}) with z' the first n coordinates.
struct SiegelPoint {
    std::vector<complexd> z;

    int dim() const { return static_cast<int>(z.size()) - 1; }
    complexd last() const { return z.back(); }
};

/// Point of the closed unit ball of C^{n+1}.
struct BallPoint {
    std::vector<complexd> xi;

    int dim() const { return static_cast<int>(xi.size()) - 1; }
    complexd last() const { return xi.back(); }
};

/// Element [zeta, t] of the Heisenberg group C^n x R.
struct HeisenbergElement {
    std::vector<complexd> zeta;
    double t = 0.0;

    int dim() const { return static_cast<int>(zeta.size()); }
};

/// Tolerance for interior/boundary classification of the height.
inline constexpr double kBoundaryTol = 1e-12;

/// Guard radius around the south pole (0', -1) of the sphere.
inline constexpr double kSouthPoleTol = 1e-14;

/// Base point (0', i) of the Siegel domain.
SiegelPoint basepoint(int n);

/// Height Im z_{n+1} - |z'|^2; positive inside, zero on the boundary.
double height(const SiegelPoint& z);

bool is_interior(const SiegelPoint& z, double tol = kBoundaryTol);
bool is_boundary(const SiegelPoint& z, double tol = kBoundaryTol);

/// The pairing rho(z,w) = (i/2)(conj(w_{n+1}) - z_{n+1}) - z'.conj(w').
/// Hermitian-symmetric; Re rho(z,w) >= (height(z)+height(w))/2 >= 0.
complexd rho(const SiegelPoint& z, const SiegelPoint& w);

/// Affine action of [zeta,t], preserving the height exactly.
SiegelPoint heis_apply(const HeisenbergElement& h, const SiegelPoint& z);

/// Group law [zeta,t].[eta,s] = [zeta+eta, t+s+2 Im(zeta.conj(eta))].
HeisenbergElement heis_compose(const HeisenbergElement& h1, const HeisenbergElement& h2);
HeisenbergElement heis_inverse(const HeisenbergElement& h);

/// Boundary point reached by acting with h on the origin: (zeta, t+i|zeta|^2).
SiegelPoint heis_orbit_of_origin(const HeisenbergElement& h);

/// Cayley transform ball -> Siegel domain,
///   xi |-> (xi'/(1+xi_{n+1}), i(1-xi_{n+1})/(1+xi_{n+1})).
SiegelPoint cayley_phi(const BallPoint& xi);

/// Inverse Cayley transform, z |-> (2iz'/(i+z_{n+1}), (i-z_{n+1})/(i+z_{n+1})).
BallPoint cayley_psi(const SiegelPoint& z);

/// Real Jacobians: 4/|1+xi_{n+1}|^{2(n+2)} and 1/(4|rho(z,i)|^{2(n+2)}).
double jac_phi(const BallPoint& xi);
double jac_psi(const SiegelPoint& z);

/// Mobius automorphism phi_xi of the ball applied to eta; phi_0 = -identity.
BallPoint mobius(const BallPoint& xi, const BallPoint& eta);

/// |.|^2 of a coordinate vector and the hermitian product sum a_k conj(b_k).
double norm_sq(const std::vector<complexd>& v);
complexd hermitian_dot(const std::vector<complexd>& a, const std::vector<complexd>& b);

}  // namespace siegel
