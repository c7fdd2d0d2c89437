#include "siegel/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

namespace siegel::specfun {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

bool is_nonpositive_integer(double x) {
    return x < 0.5 && std::abs(x - std::round(x)) < 1e-12;
}

double dist_to_integer(double x) {
    return std::abs(x - std::round(x));
}

}  // namespace

double ln_gamma(double x) {
    if (!(x > 0.0))
        throw std::domain_error("ln_gamma: argument must be positive");
    // 14-coefficient Lanczos fit, g = 671/128.
    static const double coef[14] = {
        57.1562356658629235,     -59.5979603554754912,
        14.1360979747417471,     -0.491913816097620199,
        0.339946499848118887e-4, 0.465236289270485756e-4,
        -0.983744753048795646e-4, 0.158088703224912494e-3,
        -0.210264441724104883e-3, 0.217439618115212643e-3,
        -0.164318106536763890e-3, 0.844182239838527433e-4,
        -0.261908384015814087e-4, 0.368991826595316234e-5};
    double y = x;
    double tmp = x + 5.24218750000000000;
    tmp = (x + 0.5) * std::log(tmp) - tmp;
    double ser = 0.999999999999997092;
    for (double c : coef)
        ser += c / ++y;
    return tmp + std::log(2.5066282746310005 * ser / x);
}

double gamma_signed(double x) {
    if (x > 0.0)
        return std::exp(ln_gamma(x));
    if (is_nonpositive_integer(x))
        throw std::domain_error("gamma_signed: pole at non-positive integer");
    // Reflection: Gamma(x) = pi / (sin(pi x) Gamma(1-x)).
    return kPi / (std::sin(kPi * x) * std::exp(ln_gamma(1.0 - x)));
}

double rgamma(double x) {
    if (x >= 0.5)
        return std::exp(-ln_gamma(x));
    if (is_nonpositive_integer(x))
        return 0.0;
    return std::sin(kPi * x) * std::exp(ln_gamma(1.0 - x)) / kPi;
}

double pochhammer(double a, int k) {
    if (k < 0)
        throw std::domain_error("pochhammer: k must be nonnegative");
    double result = 1.0;
    for (int i = 0; i < k; ++i)
        result *= a + i;
    return result;
}

double gauss_value(double a, double b, double c) {
    double s = c - a - b;
    if (!(s > 0.0))
        throw std::domain_error("gauss_value: requires c - a - b > 0");
    if (is_nonpositive_integer(c))
        throw std::domain_error("gauss_value: c is a non-positive integer");
    if (a == 0.0 || b == 0.0)
        return 1.0;
    if (!(c > 0.0 && c - a > 0.0 && c - b > 0.0))
        throw std::domain_error("gauss_value: Gamma argument not positive");
    return std::exp(ln_gamma(c) + ln_gamma(s) - ln_gamma(c - a) - ln_gamma(c - b));
}

double lemma_error_constant(double a, double b, double c) {
    if (!(c > std::max({a + b + 1.0, a + 1.0, b})))
        throw std::domain_error("lemma_error_constant: requires c > max{a+b+1, a+1, b}");
    if (a == 0.0)
        return 0.0;
    if (!(c > 0.0 && c - b > 0.0))
        throw std::domain_error("lemma_error_constant: Gamma argument not positive");
    double ratio = std::exp(ln_gamma(c) + ln_gamma(c - a - b - 1.0) -
                            ln_gamma(c - a - 1.0) - ln_gamma(c - b));
    return std::abs(a) * std::max(std::exp2(-a - 1.0), ratio);
}

namespace {

constexpr std::size_t kMaxTerms = 1000000;

// Power series sum with the 3-consecutive-small-terms stopping rule.
complexd series_sum(double a, double b, double c, complexd lam) {
    complexd term(1.0, 0.0);
    complexd sum(1.0, 0.0);
    int below = 0;
    for (std::size_t k = 0; k < kMaxTerms; ++k) {
        double kk = static_cast<double>(k);
        term *= lam * ((a + kk) * (b + kk) / ((c + kk) * (kk + 1.0)));
        sum += term;
        if (std::abs(term) <= 1e-15 * std::abs(sum)) {
            if (++below >= 3)
                return sum;
        } else {
            below = 0;
        }
    }
    throw NonConvergence("hyp2f1: series did not converge within 1e6 terms");
}

complexd hyp2f1_impl(double a, double b, double c, complexd lam, BoundaryPolicy pol,
                     int depth);

// Expansion about lambda = 1 for non-integer s = c-a-b:
//   F = A * F(a,b;1-s;1-lam) + B * (1-lam)^s * F(c-a,c-b;1+s;1-lam).
complexd unit_expansion(double a, double b, double c, complexd lam) {
    double s = c - a - b;
    complexd w = 1.0 - lam;
    double A = gamma_signed(c) * gamma_signed(s) * rgamma(c - a) * rgamma(c - b);
    double B = gamma_signed(c) * gamma_signed(-s) * rgamma(a) * rgamma(b);
    complexd f1 = (A == 0.0) ? complexd(0.0) : series_sum(a, b, 1.0 - s, w);
    complexd f2 = (B == 0.0) ? complexd(0.0) : series_sum(c - a, c - b, 1.0 + s, w);
    return A * f1 + B * std::pow(w, s) * f2;
}

complexd hyp2f1_impl(double a, double b, double c, complexd lam, BoundaryPolicy pol,
                     int depth) {
    if (depth > 3)
        throw NonConvergence("hyp2f1: transformation recursion exceeded");
    // Terminating (polynomial) cases sum exactly.
    if (is_nonpositive_integer(a) || is_nonpositive_integer(b))
        return series_sum(a, b, c, lam);

    double r = std::abs(lam);
    if (r <= 0.5)
        return series_sum(a, b, c, lam);

    double s = c - a - b;
    complexd w = 1.0 - lam;
    double om = std::abs(w);

    if (om <= 0.05) {
        // Near the unit point.  A negative margin is flipped by the Euler
        // transform so the series summed has c-a-b > 0.
        if (s < -1e-12)
            return std::pow(w, s) * hyp2f1_impl(c - a, c - b, c, lam, pol, depth + 1);
        if (om <= 1e-6) {
            if (pol == BoundaryPolicy::ResolveCorrection) {
                if (dist_to_integer(s) > 1e-6)
                    return unit_expansion(a, b, c, lam);
                if (s > 0.5)  // integer margin: correction O(|1-lam| log)
                    return complexd(gauss_value(a, b, c), 0.0);
                throw NonConvergence("hyp2f1: cannot resolve a near-zero margin at lambda = 1");
            }
            if (s <= 1e-3)
                throw NonConvergence("hyp2f1: c - a - b too small near lambda = 1");
            // Collapse layer: the value is the Gauss sum, the dropped
            // correction O(|1-lam|^s).
            return complexd(gauss_value(a, b, c), 0.0);
        }
        if (dist_to_integer(s) > 1e-6)
            return unit_expansion(a, b, c, lam);
        if (r <= 1.0 - 1e-4)
            return series_sum(a, b, c, lam);
        if (c > b && b > 0.0)
            return hyp2f1_integral_oracle(a, b, c, lam);
        throw NonConvergence("hyp2f1: integer-margin point too close to |lambda| = 1");
    }

    if (om <= 0.35 && r > 0.85 && dist_to_integer(s) > 1e-6)
        return unit_expansion(a, b, c, lam);

    // Pfaff map lam -> lam/(lam-1) covers the Re lam < 1/2 part of the disk.
    complexd pf = lam / (lam - 1.0);
    if (std::abs(pf) <= 0.85)
        return std::pow(w, -a) * series_sum(a, c - b, c, pf);

    if (r <= 1.0 - 1e-4)
        return series_sum(a, b, c, lam);

    // Remaining sliver: |lam| within 1e-4 of the circle, both |1-lam| and
    // the Pfaff image large.  Quadrature is the only stable route here.
    if (c > b && b > 0.0)
        return hyp2f1_integral_oracle(a, b, c, lam);
    throw NonConvergence("hyp2f1: argument too close to the unit circle");
}

}  // namespace

static complexd hyp2f1_entry(double a, double b, double c, complexd lam, BoundaryPolicy pol) {
    if (is_nonpositive_integer(c))
        throw std::domain_error("hyp2f1: c must not be a non-positive integer");
    double r = std::abs(lam);
    if (r > 1.0 + 1e-12)
        throw std::domain_error("hyp2f1: |lambda| must not exceed 1");
    if (r > 1.0)
        lam /= r;
    if (std::abs(lam - 1.0) < 1e-14) {
        if (c - a - b <= 0.0)
            throw std::domain_error("hyp2f1: lambda = 1 requires c - a - b > 0");
        return complexd(gauss_value(a, b, c), 0.0);
    }
    if (lam == complexd(0.0, 0.0))
        return complexd(1.0, 0.0);
    return hyp2f1_impl(a, b, c, lam, pol, 0);
}

complexd hyp2f1(double a, double b, double c, complexd lam) {
    return hyp2f1_entry(a, b, c, lam, BoundaryPolicy::CollapseToGauss);
}

complexd hyp2f1(const Hyp2F1Query& q) {
    return hyp2f1_entry(q.a, q.b, q.c, q.lambda, q.boundary);
}

namespace {

// 7-point Gauss / 15-point Kronrod pair on [-1,1] (positive abscissae;
// column 1 Gauss weight, column 2 Kronrod weight).
const double kGK[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0,               0.204432940075298},
    {0.586087235467691, 0.0,               0.169004726639267},
    {0.864864423359769, 0.0,               0.104790010322250},
    {0.991455371120813, 0.0,               0.022935322010529}};

template <class F>
complexd gk15(const F& f, double a, double b, double& err) {
    const double mid = 0.5 * (a + b);
    const double h = b - mid;
    complexd y0 = f(mid);
    complexd g7 = kGK[0][1] * y0;
    complexd k15 = kGK[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        double dx = h * kGK[i][0];
        complexd yi = f(mid + dx) + f(mid - dx);
        g7 += kGK[i][1] * yi;
        k15 += kGK[i][2] * yi;
    }
    g7 *= h;
    k15 *= h;
    // plain |K15-G7|: the usual (200 d)^{3/2} deflation underestimates on
    // self-similar endpoint-singular cells and stalls refinement there
    err = std::abs(g7 - k15);
    return k15;
}

// Globally adaptive bisection: always split the segment with the largest
// error estimate until the summed estimate meets the abs+rel tolerance
// 1e-10.  Budget of 1e4 subdivisions, then ToleranceNotMet.
template <class F>
complexd adapt_quad(const F& f, double a, double b) {
    constexpr double kTol = 1e-10;
    constexpr int kMaxSegments = 10000;
    struct Seg {
        double a, b, err;
        complexd val;
        bool operator<(const Seg& o) const { return err < o.err; }
    };
    std::vector<Seg> heap;
    auto push_seg = [&](double lo, double hi) -> double {
        Seg s{lo, hi, 0.0, {}};
        s.val = gk15(f, lo, hi, s.err);
        if (hi - lo < 1e-15)
            s.err = 0.0;  // cannot refine further
        heap.push_back(s);
        std::push_heap(heap.begin(), heap.end());
        return s.err;
    };
    push_seg(a, b);
    int splits = 0;
    for (;;) {
        // running totals drift by at most a few ulps per split; refresh
        // them every so often to keep the stopping test honest
        complexd total(0.0, 0.0);
        double err_total = 0.0;
        for (const Seg& s : heap) {
            total += s.val;
            err_total += s.err;
        }
        if (err_total <= kTol || err_total <= kTol * std::abs(total))
            return total;
        const double target = std::max(kTol, kTol * std::abs(total));
        // split the worst segments until the error bound plausibly halves,
        // then re-evaluate the global state
        double budget = 0.5 * err_total;
        while (err_total > budget && err_total > target) {
            if (++splits >= kMaxSegments)
                throw NonConvergence(
                    "hyp2f1_integral_oracle: tolerance not met after 1e4 subdivisions");
            std::pop_heap(heap.begin(), heap.end());
            Seg worst = heap.back();
            heap.pop_back();
            err_total -= worst.err;
            double mid = 0.5 * (worst.a + worst.b);
            err_total += push_seg(worst.a, mid);
            err_total += push_seg(mid, worst.b);
        }
    }
}

}  // namespace

complexd hyp2f1_integral_oracle(double a, double b, double c, complexd lam) {
    if (!(c > b && b > 0.0))
        throw std::domain_error("hyp2f1_integral_oracle: requires c > b > 0");
    complexd w = 1.0 - lam;
    if (w.real() < 0.0 && std::abs(w.imag()) < 1e-300)
        throw std::domain_error("hyp2f1_integral_oracle: 1 - lambda on the branch cut");

    auto base = [&](double t) -> complexd {
        return std::pow(1.0 - t * lam, -a);
    };

    // Endpoint substitutions t = u^m (t = 1 - u^m on the right) with m
    // large enough that the transformed integrand vanishes to second order:
    // a bare u^2 map leaves a u^{2b-1} power whose Gauss-Kronrod error
    // estimate under-reports by a constant factor down the bisection chain.
    complexd left, right;
    if (b < 1.0) {
        const double m = std::max(2.0, std::ceil(3.0 / b));
        left = adapt_quad(
            [&](double u) -> complexd {
                double t = std::pow(u, m);
                return m * std::pow(u, m * b - 1.0) * std::pow(1.0 - t, c - b - 1.0) * base(t);
            },
            0.0, std::pow(0.5, 1.0 / m));
    } else {
        left = adapt_quad(
            [&](double t) -> complexd {
                return std::pow(t, b - 1.0) * std::pow(1.0 - t, c - b - 1.0) * base(t);
            },
            0.0, 0.5);
    }
    if (c - b < 1.0) {
        const double m = std::max(2.0, std::ceil(3.0 / (c - b)));
        right = adapt_quad(
            [&](double u) -> complexd {
                double t = 1.0 - std::pow(u, m);
                return m * std::pow(u, m * (c - b) - 1.0) * std::pow(t, b - 1.0) * base(t);
            },
            0.0, std::pow(0.5, 1.0 / m));
    } else {
        right = adapt_quad(
            [&](double t) -> complexd {
                return std::pow(t, b - 1.0) * std::pow(1.0 - t, c - b - 1.0) * base(t);
            },
            0.5, 1.0);
    }
    double prefactor = std::exp(ln_gamma(c) - ln_gamma(b) - ln_gamma(c - b));
    return prefactor * (left + right);
}

}  // namespace siegel::specfun
