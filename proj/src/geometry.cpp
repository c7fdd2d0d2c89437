#include "siegel/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace siegel {

namespace {

const complexd kI(0.0, 1.0);

void require_same_dim(int a, int b, const char* where) {
    if (a != b)
        throw std::invalid_argument(std::string(where) + ": dimension mismatch");
}

}  // namespace

double norm_sq(const std::vector<complexd>& v) {
    double s = 0.0;
    for (const complexd& x : v)
        s += std::norm(x);
    return s;
}

complexd hermitian_dot(const std::vector<complexd>& a, const std::vector<complexd>& b) {
    complexd s(0.0, 0.0);
    for (std::size_t k = 0; k < a.size(); ++k)
        s += a[k] * std::conj(b[k]);
    return s;
}

SiegelPoint basepoint(int n) {
    SiegelPoint p;
    p.z.assign(n + 1, complexd(0.0, 0.0));
    p.z[n] = kI;
    return p;
}

double height(const SiegelPoint& z) {
    double s = 0.0;
    const int n = z.dim();
    for (int k = 0; k < n; ++k)
        s += std::norm(z.z[k]);
    return z.z[n].imag() - s;
}

bool is_interior(const SiegelPoint& z, double tol) { return height(z) > tol; }
bool is_boundary(const SiegelPoint& z, double tol) { return std::abs(height(z)) <= tol; }

complexd rho(const SiegelPoint& z, const SiegelPoint& w) {
    require_same_dim(z.dim(), w.dim(), "rho");
    const int n = z.dim();
    complexd s = 0.5 * kI * (std::conj(w.z[n]) - z.z[n]);
    for (int k = 0; k < n; ++k)
        s -= z.z[k] * std::conj(w.z[k]);
    return s;
}

SiegelPoint heis_apply(const HeisenbergElement& h, const SiegelPoint& z) {
    require_same_dim(h.dim(), z.dim(), "heis_apply");
    const int n = z.dim();
    SiegelPoint out;
    out.z.resize(n + 1);
    complexd cross(0.0, 0.0);
    for (int k = 0; k < n; ++k) {
        out.z[k] = z.z[k] + h.zeta[k];
        cross += z.z[k] * std::conj(h.zeta[k]);
    }
    out.z[n] = z.z[n] + h.t + 2.0 * kI * cross + kI * norm_sq(h.zeta);
    return out;
}

HeisenbergElement heis_compose(const HeisenbergElement& h1, const HeisenbergElement& h2) {
    require_same_dim(h1.dim(), h2.dim(), "heis_compose");
    HeisenbergElement out;
    out.zeta.resize(h1.zeta.size());
    for (std::size_t k = 0; k < out.zeta.size(); ++k)
        out.zeta[k] = h1.zeta[k] + h2.zeta[k];
    out.t = h1.t + h2.t + 2.0 * hermitian_dot(h1.zeta, h2.zeta).imag();
    return out;
}

HeisenbergElement heis_inverse(const HeisenbergElement& h) {
    HeisenbergElement out;
    out.zeta.resize(h.zeta.size());
    for (std::size_t k = 0; k < out.zeta.size(); ++k)
        out.zeta[k] = -h.zeta[k];
    out.t = -h.t;
    return out;
}

SiegelPoint heis_orbit_of_origin(const HeisenbergElement& h) {
    const int n = h.dim();
    SiegelPoint p;
    p.z.resize(n + 1);
    for (int k = 0; k < n; ++k)
        p.z[k] = h.zeta[k];
    p.z[n] = h.t + kI * norm_sq(h.zeta);
    return p;
}

SiegelPoint cayley_phi(const BallPoint& xi) {
    const int n = xi.dim();
    const complexd denom = 1.0 + xi.xi[n];
    if (std::abs(denom) < kSouthPoleTol)
        throw std::domain_error("cayley_phi: south pole singularity");
    SiegelPoint out;
    out.z.resize(n + 1);
    for (int k = 0; k < n; ++k)
        out.z[k] = xi.xi[k] / denom;
    out.z[n] = kI * (1.0 - xi.xi[n]) / denom;
    return out;
}

BallPoint cayley_psi(const SiegelPoint& z) {
    const int n = z.dim();
    const complexd denom = kI + z.z[n];
    BallPoint out;
    out.xi.resize(n + 1);
    for (int k = 0; k < n; ++k)
        out.xi[k] = 2.0 * kI * z.z[k] / denom;
    out.xi[n] = (kI - z.z[n]) / denom;
    return out;
}

double jac_phi(const BallPoint& xi) {
    const int n = xi.dim();
    const double d = std::abs(1.0 + xi.xi[n]);
    if (d < kSouthPoleTol)
        throw std::domain_error("jac_phi: south pole singularity");
    return 4.0 / std::pow(d, 2.0 * (n + 2));
}

double jac_psi(const SiegelPoint& z) {
    const int n = z.dim();
    const double r = std::abs(rho(z, basepoint(n)));
    return 1.0 / (4.0 * std::pow(r, 2.0 * (n + 2)));
}

BallPoint mobius(const BallPoint& xi, const BallPoint& eta) {
    if (xi.dim() != eta.dim())
        throw std::invalid_argument("mobius: dimension mismatch");
    const std::size_t m = xi.xi.size();
    const double xi_sq = norm_sq(xi.xi);
    BallPoint out;
    out.xi.resize(m);
    if (xi_sq == 0.0) {
        for (std::size_t k = 0; k < m; ++k)
            out.xi[k] = -eta.xi[k];
        return out;
    }
    const complexd proj = hermitian_dot(eta.xi, xi.xi) / xi_sq;  // P_xi eta = proj * xi
    const complexd denom = 1.0 - hermitian_dot(eta.xi, xi.xi);
    const double root = std::sqrt(1.0 - xi_sq);
    for (std::size_t k = 0; k < m; ++k) {
        const complexd p = proj * xi.xi[k];
        const complexd q = eta.xi[k] - p;
        out.xi[k] = (xi.xi[k] - p - root * q) / denom;
    }
    return out;
}

}  // namespace siegel
