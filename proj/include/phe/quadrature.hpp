#pragma once

#include <variant>

#include "phe/moebius.hpp"
#include "phe/numeric.hpp"

namespace phe {

// ---------------------------------------------------------------------------
// Integration domains, all carrying the hyperbolic measure dx dy / y^2.

/// SL2(Z) fundamental domain |x| <= 1/2, |z| >= 1, truncated at y <= y_cap.
struct DomainFund {
    double y_cap = 12.0;
};

/// Cusp strip 0 <= x < 1, y_lo <= y <= y_cap.
struct DomainStrip {
    double y_lo = 1e-3, y_cap = 12.0;
};

/// Hyperbolic fundamental annulus 1 <= |z| < xi^2 in the upper half plane.
struct DomainAnnulus {
    double xi = 2.0;
};

/// Image of the disc |w| < R under sigma_{z0}; R = 1 gives all of H.
struct DomainDisc {
    cplx z0{0.0, 1.0};
    double R = 1.0;
};

/// Image of the sector |w| < R, |theta - pi| <= pi/N (fundamental domain of
/// the order-N elliptic stabilizer at z0).
struct DomainSector {
    cplx z0{0.0, 1.0};
    int N = 2;
    double R = 1.0;
};

/// Hyperbolic ball of radius rho about center; maps to |w| < (e^rho-1)/(e^rho+1).
struct DomainBall {
    cplx center{0.0, 1.0};
    double rho = 0.5;
};

using Domain = std::variant<DomainFund, DomainStrip, DomainAnnulus, DomainDisc, DomainSector,
                            DomainBall>;

struct QuadResult {
    cplx value;
    double err_estimate;  // |order n vs 2n| difference
};

namespace detail {

inline ScalingMat disc_chart(cplx z0) {
    cplx tib(0, 2 * z0.imag());
    return ScalingMat{-std::conj(z0) / tib, z0 / tib, cplx(-1, 0) / tib, cplx(1, 0) / tib};
}

inline void check_finite(cplx v, cplx z) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw std::runtime_error("mu_integrate: non-finite integrand sample at z = (" +
                                 std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")");
}

// split [lo, hi] into panels doubling in width, GL on each
template <typename G>
cplx panel_integrate(G&& g, double lo, double hi, int order) {
    cplx acc(0, 0);
    double a = lo;
    double width = std::max(1.0, lo);
    while (a < hi) {
        double b = std::min(hi, a + width);
        acc += gl_integrate(g, a, b, order);
        a = b;
        width *= 2;
    }
    return acc;
}

template <typename F>
cplx mu_pass(F&& f, const DomainFund& dom, int order) {
    auto outer = [&](double x) {
        double ylo = std::sqrt(1.0 - x * x);
        auto g = [&](double y) {
            cplx z(x, y);
            cplx v = f(z);
            check_finite(v, z);
            return v / (y * y);
        };
        return panel_integrate(g, ylo, dom.y_cap, order);
    };
    return gl_integrate(outer, -0.5, 0.5, order);
}

template <typename F>
cplx mu_pass(F&& f, const DomainStrip& dom, int order) {
    auto outer = [&](double x) {
        auto g = [&](double y) {
            cplx z(x, y);
            cplx v = f(z);
            check_finite(v, z);
            return v / (y * y);
        };
        return panel_integrate(g, dom.y_lo, dom.y_cap, order);
    };
    return gl_integrate(outer, 0.0, 1.0, order);
}

template <typename F>
cplx mu_pass(F&& f, const DomainAnnulus& dom, int order) {
    // z = r e^{i theta}: d mu = dr dtheta / (r sin^2 theta)
    auto outer = [&](double r) {
        auto g = [&](double th) {
            cplx z = r * std::exp(cplx(0, th));
            cplx v = f(z);
            check_finite(v, z);
            double s = std::sin(th);
            return v / (r * s * s);
        };
        return gl_integrate(g, 0.0, pi, order);
    };
    return gl_integrate(outer, 1.0, dom.xi * dom.xi, order);
}

// common kernel for the disc-chart domains: z = sigma(w), w = r e^{i theta};
// dx dy = |det sigma|^2 / |j(sigma,w)|^4 du dv and d mu = dx dy / y^2
template <typename F>
cplx disc_pass(F&& f, const ScalingMat& sigma, double r_hi, double th_lo, double th_hi,
               int order) {
    const double dscale = std::norm(sigma.det());  // |det sigma|^2
    auto outer = [&](double r) {
        auto g = [&](double th) {
            cplx w = r * std::exp(cplx(0, th));
            auto [z, j] = sigma.apply(w);
            cplx v = f(z);
            check_finite(v, z);
            double jac = dscale / std::norm(j * j);
            double y = z.imag();
            return v * (jac / (y * y));
        };
        return gl_integrate(g, th_lo, th_hi, order);
    };
    auto radial = [&](double r) { return outer(r) * r; };
    return gl_integrate(radial, 0.0, r_hi, order);
}

template <typename F>
cplx mu_pass(F&& f, const DomainDisc& dom, int order) {
    return disc_pass(f, disc_chart(dom.z0), dom.R, 0.0, 2 * pi, order);
}

template <typename F>
cplx mu_pass(F&& f, const DomainSector& dom, int order) {
    return disc_pass(f, disc_chart(dom.z0), dom.R, pi - pi / dom.N, pi + pi / dom.N, order);
}

template <typename F>
cplx mu_pass(F&& f, const DomainBall& dom, int order) {
    double R = (std::exp(dom.rho) - 1.0) / (std::exp(dom.rho) + 1.0);
    return disc_pass(f, disc_chart(dom.center), R, 0.0, 2 * pi, order);
}

}  // namespace detail

/// Integral of f against the hyperbolic measure over the given domain.
/// Error estimate from order doubling; the returned value is the finer pass.
template <typename F>
QuadResult mu_integrate(F&& f, const Domain& dom, int order = 32) {
    cplx coarse = std::visit([&](const auto& d) { return detail::mu_pass(f, d, order); }, dom);
    cplx fine = std::visit([&](const auto& d) { return detail::mu_pass(f, d, 2 * order); }, dom);
    return {fine, std::abs(fine - coarse)};
}

/// Petersson inner product <f, g> = int f conj(g) y^k d mu over the truncated
/// SL2(Z) fundamental domain.
template <typename F, typename G>
QuadResult petersson_inner(F&& f, G&& g, int k, double y_cap = 12.0, int order = 32) {
    if (k % 2 != 0 || k < 2) throw std::invalid_argument("petersson_inner: weight must be even >= 2");
    auto integrand = [&](cplx z) {
        return f(z) * std::conj(g(z)) * std::pow(z.imag(), k);
    };
    return mu_integrate(integrand, DomainFund{y_cap}, order);
}

// ---------------------------------------------------------------------------
// Closed-form targets paired with their quadrature oracles.

/// I_{a,b} = int_0^pi e^{a theta} sin^b theta dtheta for even b >= 0.
/// Closed form: binomial expression at a = 0, otherwise
/// (e^{pi a}-1)/a * b! / prod_{j=2,4,..,b} (a^2 + j^2).
struct PairedValue {
    cplx closed;
    cplx quadrature;
};

inline cplx i_ab_closed(cplx a, int b) {
    if (b < 0 || b % 2 != 0) throw std::invalid_argument("i_ab: b must be even and >= 0");
    if (std::abs(a) == 0.0) return pi * binom(b, b / 2) / std::pow(2.0, b);
    cplx acc = (std::exp(pi * a) - 1.0) / a;
    for (int j = 2; j <= b; j += 2) acc = acc * double(j - 1) * double(j) / (a * a + double(j) * double(j));
    return acc;
}

/// Same value through the gamma-function product (derivation route used for
/// the hyperbolic inner-product constants).
inline cplx i_ab_gamma_form(cplx a, int b) {
    if (std::abs(a) == 0.0) return i_ab_closed(a, b);
    const cplx i2(0, 2);
    cplx s = a / i2;
    return (std::exp(pi * a) - 1.0) *
           std::exp(lgamma_complex(double(b) + 1.0) + lgamma_complex(s - double(b) / 2.0) -
                    lgamma_complex(s + double(b) / 2.0 + 1.0)) /
           ipow(i2, b + 1);
}

inline PairedValue i_ab(cplx a, int b, int order = 64) {
    cplx quad = gl_integrate(
        [&](double th) { return std::exp(a * th) * std::pow(std::sin(th), b); }, 0.0, pi, order);
    return {i_ab_closed(a, b), quad};
}

/// Whole-plane monomial moment int_H (s^{-1}z)^a conj(s^{-1}z)^b |j(s^{-1},z)|^{-2k} y^k dmu
/// with s = sigma_{z0}: equals 4 pi (k-2)! a! / ((4 beta)^k (a+k-1)!) on the
/// diagonal a = b and vanishes otherwise.
inline PairedValue disc_moment(int a, int b, int k, cplx z0, int order = 48) {
    if (k < 2 || k % 2 != 0) throw std::invalid_argument("disc_moment: even k >= 2");
    ScalingMat sigma_inv{cplx(1, 0), -z0, cplx(1, 0), -std::conj(z0)};
    double beta = z0.imag();
    auto integrand = [&](cplx z) {
        auto [w, j] = sigma_inv.apply(z);
        return ipow(w, a) * std::conj(ipow(w, b)) / std::pow(std::norm(j), k) *
               std::pow(z.imag(), k);
    };
    cplx quad = detail::mu_pass(integrand, DomainDisc{z0, 1.0}, order);
    cplx closed = 0.0;
    if (a == b)
        closed = 4.0 * pi * std::exp(std::lgamma(k - 1.0) + std::lgamma(a + 1.0) -
                                     std::lgamma(a + double(k))) /
                 std::pow(4.0 * beta, k);
    return {closed, quad};
}

/// Sector variant with exponents N l - k/2 and N m - k/2 over the elliptic
/// fundamental sector: diagonal value 4 pi (k-2)! (Nm-k/2)! / (N (4 beta)^k (Nm+k/2-1)!).
inline PairedValue sector_moment(int l, int m, int k, cplx z0, int N, int order = 48) {
    if (k < 2 || k % 2 != 0) throw std::invalid_argument("sector_moment: even k >= 2");
    if (N * l - k / 2 < 0 || N * m - k / 2 < 0)
        throw std::invalid_argument("sector_moment: exponents must be nonnegative");
    ScalingMat sigma_inv{cplx(1, 0), -z0, cplx(1, 0), -std::conj(z0)};
    double beta = z0.imag();
    auto integrand = [&](cplx z) {
        auto [w, j] = sigma_inv.apply(z);
        return ipow(w, N * (long long)l - k / 2) * std::conj(ipow(w, N * (long long)m - k / 2)) /
               std::pow(std::norm(j), k) * std::pow(z.imag(), k);
    };
    cplx quad = detail::mu_pass(integrand, DomainSector{z0, N, 1.0}, order);
    cplx closed = 0.0;
    if (l == m)
        closed = 4.0 * pi *
                 std::exp(std::lgamma(k - 1.0) + std::lgamma(N * (double)m - k / 2.0 + 1.0) -
                          std::lgamma(N * (double)m + k / 2.0)) /
                 (double(N) * std::pow(4.0 * beta, k));
    return {closed, quad};
}

/// C_{r,k} of the hyperbolic mean-value identity: the disc substitution turns
/// the n = 0 monomial integral into 4 * 2^{-k} int_{D_R} (1-|u|^2)^{k/2-2} du dv,
/// so C_{r,k} = 8 pi (1 - (1-R^2)^{k/2-1}) / (2^k (k-2)) with R = (e^r-1)/(e^r+1).
inline double mean_value_constant(double rho, int k) {
    double R = (std::exp(rho) - 1.0) / (std::exp(rho) + 1.0);
    return 8.0 * pi / (std::pow(2.0, double(k)) * (k - 2.0)) *
           (1.0 - std::pow(1.0 - R * R, k / 2.0 - 1.0));
}

/// Residual | y^{-k/2} f(z) - (1/C_{r,k}) int_{B(z,r)} f(w) Im(w)^{k/2} |w - conj z|^{-k} dmu |.
template <typename F>
double mean_value_residual(F&& f, int k, cplx z, double rho, int order = 48) {
    if (!(z.imag() > 0)) throw std::invalid_argument("mean_value_residual: z not in H");
    auto integrand = [&](cplx w) {
        return f(w) * std::pow(w.imag(), k / 2.0) / std::pow(std::abs(w - std::conj(z)), k);
    };
    cplx integral = detail::mu_pass(integrand, DomainBall{z, rho}, order);
    cplx lhs = std::pow(z.imag(), -k / 2.0) * f(z);
    return std::abs(lhs - integral / mean_value_constant(rho, k));
}

/// int_{B(z0,rho)} (sigma_{z0}^{-1} w)^n Im(w)^{k/2} |w - conj z0|^{-k} dmu:
/// C_{r,k} beta^{-k/2} for n = 0 and 0 for n >= 1.
inline PairedValue ball_monomial(int n, int k, cplx z0, double rho, int order = 48) {
    ScalingMat sigma_inv{cplx(1, 0), -z0, cplx(1, 0), -std::conj(z0)};
    auto integrand = [&](cplx w) {
        auto [u, j] = sigma_inv.apply(w);
        return ipow(u, n) * std::pow(w.imag(), k / 2.0) / std::pow(std::abs(w - std::conj(z0)), k);
    };
    cplx quad = detail::mu_pass(integrand, DomainBall{z0, rho}, order);
    cplx closed = (n == 0) ? mean_value_constant(rho, k) * std::pow(z0.imag(), -k / 2.0) : 0.0;
    return {closed, quad};
}

}  // namespace phe
