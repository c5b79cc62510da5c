#pragma once

#include <array>
#include <cstdlib>
#include <numeric>
#include <string>

#include "phe/numeric.hpp"

namespace phe {

/// Point of the upper half plane; construction enforces Im > 0.
struct PointH {
    cplx z;
    explicit PointH(cplx w) : z(w) {
        if (!(w.imag() > 0.0)) throw std::invalid_argument("PointH: Im(z) must be positive");
    }
    operator cplx() const { return z; }
};

struct MoebiusImage {
    cplx image;
    cplx jfactor;  // cz + d
};

/// Integer 2x2 matrix of determinant one, sign-carrying (SL2, not PSL2).
struct GroupElement {
    long long a = 1, b = 0, c = 0, d = 1;

    MoebiusImage apply(cplx z) const;
    MoebiusImage apply(const PointH& z) const;

    long long det() const { return a * d - b * c; }
    long long trace() const { return a + d; }
    long long entry_max() const {
        return std::max(std::max(std::llabs(a), std::llabs(b)), std::max(std::llabs(c), std::llabs(d)));
    }
    GroupElement inverse() const { return {d, -b, -c, a}; }
    GroupElement operator-() const { return {-a, -b, -c, -d}; }
    static GroupElement identity() { return {1, 0, 0, 1}; }
    bool operator==(const GroupElement&) const = default;
    auto key() const { return std::array<long long, 4>{a, b, c, d}; }
    std::string str() const {
        return "(" + std::to_string(a) + "," + std::to_string(b) + ";" + std::to_string(c) + "," +
               std::to_string(d) + ")";
    }
};

inline GroupElement operator*(const GroupElement& g, const GroupElement& h) {
    return {g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d, g.c * h.a + g.d * h.c,
            g.c * h.b + g.d * h.d};
}

inline GroupElement gpow(GroupElement g, long long n) {
    if (n < 0) return gpow(g.inverse(), -n);
    GroupElement acc = GroupElement::identity();
    while (n > 0) {
        if (n & 1) acc = acc * g;
        g = g * g;
        n >>= 1;
    }
    return acc;
}

/// First nonzero entry of (a,b,c,d) made positive.
inline GroupElement sign_normalized(const GroupElement& g) {
    long long lead = g.a != 0 ? g.a : (g.b != 0 ? g.b : (g.c != 0 ? g.c : g.d));
    return lead < 0 ? -g : g;
}

inline bool psl_eq(const GroupElement& g, const GroupElement& h) { return g == h || g == -h; }

enum class ElementType { Identity, Parabolic, Elliptic, Hyperbolic };

inline ElementType classify(const GroupElement& g) {
    if (g.det() != 1) throw std::invalid_argument("classify: determinant must be 1");
    if (psl_eq(g, GroupElement::identity())) return ElementType::Identity;
    long long t = std::llabs(g.trace());
    if (t < 2) return ElementType::Elliptic;
    if (t == 2) return ElementType::Parabolic;
    return ElementType::Hyperbolic;
}

/// Cusp p/q in lowest terms with q >= 0; q = 0 encodes infinity.
struct Cusp {
    long long p = 1, q = 0;
    static Cusp infinity() { return {1, 0}; }
    static Cusp rational(long long p, long long q) {
        if (q == 0) return infinity();
        long long g = std::gcd(std::llabs(p), std::llabs(q));
        p /= g;
        q /= g;
        if (q < 0) { p = -p; q = -q; }
        return {p, q};
    }
    bool is_infinity() const { return q == 0; }
    bool operator==(const Cusp&) const = default;
};

inline Cusp apply_cusp(const GroupElement& g, const Cusp& x) {
    return Cusp::rational(g.a * x.p + g.b * x.q, g.c * x.p + g.d * x.q);
}

/// 2x2 complex matrix for the scaling conjugators; determinant need not be one.
struct ScalingMat {
    cplx a{1.0, 0.0}, b{0.0, 0.0}, c{0.0, 0.0}, d{1.0, 0.0};

    cplx det() const { return a * d - b * c; }
    MoebiusImage apply(cplx z) const;
    MoebiusImage apply(const PointH& z) const;
    static ScalingMat identity() { return {}; }
    static ScalingMat of(const GroupElement& g) {
        return {cplx(double(g.a), 0), cplx(double(g.b), 0), cplx(double(g.c), 0),
                cplx(double(g.d), 0)};
    }
    ScalingMat inverse() const {
        cplx dt = det();
        if (std::abs(dt) < 1e-300) throw std::invalid_argument("ScalingMat: singular");
        return {d / dt, -b / dt, -c / dt, a / dt};
    }
};

inline ScalingMat operator*(const ScalingMat& s, const ScalingMat& t) {
    return {s.a * t.a + s.b * t.c, s.a * t.b + s.b * t.d, s.c * t.a + s.d * t.c,
            s.c * t.b + s.d * t.d};
}

inline ScalingMat operator*(const ScalingMat& s, const GroupElement& g) {
    return s * ScalingMat::of(g);
}

inline cplx jfactor(const ScalingMat& s, cplx z) { return s.c * z + s.d; }
inline cplx jfactor(const GroupElement& g, cplx z) { return double(g.c) * z + double(g.d); }

inline MoebiusImage ScalingMat::apply(cplx z) const {
    cplx j = c * z + d;
    double scale = std::abs(c) + std::abs(d);
    if (std::abs(j) <= 1e-14 * (scale > 0 ? scale : 1.0))
        throw std::domain_error("moebius: maps-to-infinity (cz+d = 0)");
    return {(a * z + b) / j, j};
}

inline MoebiusImage GroupElement::apply(cplx z) const { return ScalingMat::of(*this).apply(z); }

inline MoebiusImage GroupElement::apply(const PointH& z) const { return apply(z.z); }
inline MoebiusImage ScalingMat::apply(const PointH& z) const { return apply(z.z); }

/// Normalized weight-k action: det(g)^{k/2} f(gz) / j(g,z)^k.
template <typename F>
cplx slash_eval(F&& f, int k, const ScalingMat& s, cplx z) {
    if (k % 2 != 0) throw std::invalid_argument("slash_eval: weight must be even");
    auto [w, j] = s.apply(z);
    return ipow(s.det(), k / 2) * f(w) / ipow(j, k);
}

template <typename F>
cplx slash_eval(F&& f, int k, const GroupElement& g, cplx z) {
    return slash_eval(std::forward<F>(f), k, ScalingMat::of(g), z);
}

/// SL2(Z) or the Hecke congruence subgroup Gamma0(N).
struct Fuchsian {
    long long level = 1;
    static Fuchsian sl2z() { return {1}; }
    static Fuchsian gamma0(long long n) {
        if (n < 1) throw std::invalid_argument("gamma0: level must be positive");
        return {n};
    }
    bool contains(const GroupElement& g) const { return g.det() == 1 && g.c % level == 0; }
    bool operator==(const Fuchsian&) const = default;
};

// ---------------------------------------------------------------------------
// Fixed-point data

struct ParabolicDatum {
    Cusp cusp;
    GroupElement gamma;  // generator of the stabilizer
    ScalingMat sigma, sigma_inv;
};

/// Scaling data for the cusps supported here: infinity (sigma = I) and, for
/// Gamma0(N), the cusp 0 with sigma = (0, -1/sqrt(N); sqrt(N), 0).
inline ParabolicDatum make_parabolic_datum(const Fuchsian& group, const Cusp& cusp) {
    if (cusp.is_infinity()) {
        return {cusp, GroupElement{1, 1, 0, 1}, ScalingMat::identity(), ScalingMat::identity()};
    }
    if (cusp.p == 0) {
        double r = std::sqrt(double(group.level));
        ScalingMat s{cplx(0, 0), cplx(-1.0 / r, 0), cplx(r, 0), cplx(0, 0)};
        GroupElement gen{1, 0, -group.level, 1};
        return {cusp, gen, s, s.inverse()};
    }
    throw std::invalid_argument("make_parabolic_datum: only the cusps infinity and 0 are supported");
}

struct HyperbolicDatum {
    GroupElement gamma;          // primitive hyperbolic element
    double xi = 0;               // eigenvalue with xi^2 > 1
    double log_xi = 0;
    double eta1 = 0, eta2 = 0;   // repelling / attracting fixed points
    ScalingMat sigma, sigma_inv; // sigma(0) = eta1, sigma(inf) = eta2
};

/// Diagonalize a hyperbolic element: sigma^{-1} gamma sigma = +-diag(xi, 1/xi).
/// Among the one-parameter family of scaling matrices, the representative with
/// equal column norms is chosen.
inline HyperbolicDatum make_hyperbolic_datum(const GroupElement& g) {
    if (classify(g) != ElementType::Hyperbolic)
        throw std::invalid_argument("make_hyperbolic_datum: element is not hyperbolic");
    double t = double(g.trace());
    double s = std::sqrt(t * t - 4.0);
    double lam_big = (t > 0) ? (t + s) / 2.0 : (t - s) / 2.0;   // |lam_big| = xi
    double lam_small = (t > 0) ? (t - s) / 2.0 : (t + s) / 2.0;
    double xi = std::abs(lam_big);
    // integer hyperbolic elements have c != 0, so (lam - d, c) never degenerates
    double u1 = lam_big - double(g.d), u2 = double(g.c);
    double v1 = lam_small - double(g.d), v2 = double(g.c);
    double det0 = u1 * v2 - u2 * v1;
    if (det0 < 0) { v1 = -v1; v2 = -v2; det0 = -det0; }
    double r = std::sqrt(det0);
    u1 /= r; u2 /= r; v1 /= r; v2 /= r;
    double nu = std::hypot(u1, u2), nv = std::hypot(v1, v2);
    double x = std::sqrt(nv / nu);
    u1 *= x; u2 *= x; v1 /= x; v2 /= x;
    HyperbolicDatum out;
    out.gamma = g;
    out.xi = xi;
    out.log_xi = std::log(xi);
    out.eta2 = u1 / u2;
    out.eta1 = v1 / v2;
    out.sigma = ScalingMat{cplx(u1, 0), cplx(v1, 0), cplx(u2, 0), cplx(v2, 0)};
    out.sigma_inv = out.sigma.inverse();
    return out;
}

struct EllipticDatum {
    cplx z0;
    double beta = 0;             // Im z0
    GroupElement eps;            // stabilizer generator, normalized below
    int order = 0;               // N = |stabilizer| in PSL2
    cplx zeta;                   // e^{i pi / N}
    ScalingMat sigma, sigma_inv;
};

/// Elliptic fixed-point data with sigma = (1/2i beta)(-conj(z0), z0; -1, 1).
/// The generator is normalized (replacing eps by a power) so that
/// sigma^{-1} eps sigma = diag(zeta, zeta^{-1}) with zeta = e^{i pi/N}.
inline EllipticDatum make_elliptic_datum(const PointH& z0p, const Fuchsian& group) {
    cplx z0 = z0p.z;
    if (group.level != 1)
        throw std::invalid_argument("make_elliptic_datum: no elliptic points supported for this group");
    GroupElement base;
    int order;
    const cplx rho(0.5, std::sqrt(3.0) / 2.0);
    if (std::abs(z0 - cplx(0, 1)) < 1e-9) {
        base = GroupElement{0, -1, 1, 0};
        order = 2;
    } else if (std::abs(z0 - rho) < 1e-9) {
        base = GroupElement{0, -1, 1, -1};
        order = 3;
    } else {
        throw std::invalid_argument("make_elliptic_datum: z0 is not an elliptic point of SL2(Z)");
    }
    EllipticDatum out;
    out.z0 = z0;
    out.beta = z0.imag();
    out.order = order;
    out.zeta = std::exp(cplx(0, pi / order));
    cplx tib(0, 2 * out.beta);
    out.sigma = ScalingMat{-std::conj(z0) / tib, z0 / tib, cplx(-1, 0) / tib, cplx(1, 0) / tib};
    out.sigma_inv = ScalingMat{cplx(1, 0), -z0, cplx(1, 0), -std::conj(z0)};
    // pick the stabilizer power with j(eps, conj z0) = e^{i pi/N}
    for (int i = 0; i < 2 * order; ++i) {
        GroupElement cand = gpow(base, i % order);
        if (i >= order) cand = -cand;
        if (psl_eq(cand, GroupElement::identity())) continue;
        cplx zeta_cand = jfactor(cand, std::conj(z0));
        if (std::abs(zeta_cand - out.zeta) < 1e-9) {
            out.eps = cand;
            return out;
        }
    }
    throw std::logic_error("make_elliptic_datum: generator normalization failed");
}

}  // namespace phe
