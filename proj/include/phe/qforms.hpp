#pragma once

#include <algorithm>
#include <set>

#include "phe/cosets.hpp"
#include "phe/forms.hpp"
#include "phe/moebius.hpp"
#include "phe/poincare.hpp"

namespace phe {

/// Indefinite integral binary quadratic form a x^2 + b x y + c y^2, D = b^2 - 4ac > 0.
struct QuadForm {
    long long a = 0, b = 0, c = 0;
    long long disc() const { return b * b - 4 * a * c; }
    bool primitive() const { return std::gcd(std::gcd(std::llabs(a), std::llabs(b)), std::llabs(c)) == 1; }
    bool operator==(const QuadForm&) const = default;
    auto key() const { return std::array<long long, 3>{a, b, c}; }
    cplx operator()(cplx z) const { return double(a) * z * z + double(b) * z + double(c); }
};

inline void require_valid_disc(long long D) {
    if (D <= 0 || (D % 4 != 0 && D % 4 != 1) || is_perfect_square(D))
        throw std::invalid_argument("qforms: discriminant must be positive, 0 or 1 mod 4, nonsquare");
}

/// Gauss-reduced: 0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b.
inline bool is_reduced(const QuadForm& q) {
    double s = std::sqrt(double(q.disc()));
    double t = 2.0 * std::llabs(q.a);
    return q.b > 0 && q.b < s && s - q.b < t && t < s + q.b;
}

/// Right-neighbor step (a,b,c) -> (c,b',c') with b' = -b (mod 2|c|) in the
/// standard window; iterating reaches a reduced form and then walks its cycle.
inline QuadForm rho_step(const QuadForm& q) {
    long long D = q.disc();
    double s = std::sqrt(double(D));
    long long ac = std::llabs(q.c);
    if (ac == 0) throw std::invalid_argument("rho_step: degenerate form");
    long long b2;
    if (double(ac) > s) {
        // -|c| < b' <= |c|
        b2 = -q.b % (2 * ac);
        if (b2 <= -ac) b2 += 2 * ac;
        if (b2 > ac) b2 -= 2 * ac;
    } else {
        // sqrt(D) - 2|c| < b' < sqrt(D)
        b2 = -q.b % (2 * ac);
        while (double(b2) < s - 2 * ac) b2 += 2 * ac;
        while (double(b2) >= s) b2 -= 2 * ac;
    }
    long long c2 = (b2 * b2 - D) / (4 * q.c);
    return {q.c, b2, c2};
}

inline QuadForm reduce(QuadForm q, int max_steps = 1 << 20) {
    require_valid_disc(q.disc());
    for (int i = 0; i < max_steps; ++i) {
        if (is_reduced(q)) return q;
        q = rho_step(q);
    }
    throw std::runtime_error("reduce: did not terminate");
}

/// SL2(Z)-equivalence class of a primitive form, stored as its reduced cycle.
struct FormClass {
    QuadForm representative;
    std::vector<QuadForm> cycle;
    bool contains(const QuadForm& q) const {
        QuadForm r = reduce(q);
        return std::find(cycle.begin(), cycle.end(), r) != cycle.end();
    }
};

inline std::vector<QuadForm> reduced_cycle(const QuadForm& start) {
    std::vector<QuadForm> cycle{start};
    QuadForm q = rho_step(start);
    while (!(q == start)) {
        cycle.push_back(q);
        q = rho_step(q);
        if (cycle.size() > 10000) throw std::runtime_error("reduced_cycle: runaway cycle");
    }
    return cycle;
}

/// One FormClass per proper equivalence class of primitive forms of
/// discriminant D; count is the class number h(D).
inline std::vector<FormClass> class_list(long long D) {
    require_valid_disc(D);
    std::vector<QuadForm> reduced;
    long long bmax = isqrt_ll(D);
    for (long long b = 1; b <= bmax; ++b) {
        if ((D - b * b) % 4 != 0) continue;
        long long ac = (b * b - D) / 4;  // negative
        for (long long a = 1; a * a <= -ac; ++a) {
            if (ac % a != 0) continue;
            long long c = ac / a;  // a*c = ac with |a| <= |c|
            for (auto [aa, cc] : {std::pair{a, c}, {-a, -c}, {c, a}, {-c, -a}}) {
                QuadForm q{aa, b, cc};
                if (q.primitive() && is_reduced(q)) reduced.push_back(q);
            }
        }
    }
    std::sort(reduced.begin(), reduced.end(),
              [](const QuadForm& p, const QuadForm& q) { return p.key() < q.key(); });
    reduced.erase(std::unique(reduced.begin(), reduced.end()), reduced.end());
    std::vector<FormClass> classes;
    std::set<std::array<long long, 3>> used;
    for (const auto& q : reduced) {
        if (used.count(q.key())) continue;
        FormClass cl;
        cl.cycle = reduced_cycle(q);
        for (const auto& f : cl.cycle) used.insert(f.key());
        cl.representative = *std::min_element(
            cl.cycle.begin(), cl.cycle.end(),
            [](const QuadForm& p, const QuadForm& r) { return p.key() < r.key(); });
        classes.push_back(std::move(cl));
    }
    std::sort(classes.begin(), classes.end(), [](const FormClass& p, const FormClass& q) {
        return p.representative.key() < q.representative.key();
    });
    return classes;
}

/// Form attached to a hyperbolic matrix: Q_gamma(z) = c z^2 + (d-a) z - b,
/// of discriminant trace^2 - 4.  Not divided by content: the automorph built
/// from the u-th Pell solution carries content u.
inline QuadForm form_of(const GroupElement& g) {
    if (classify(g) != ElementType::Hyperbolic)
        throw std::invalid_argument("form_of: element is not hyperbolic");
    return {g.c, g.d - g.a, -g.b};
}

inline QuadForm primitive_part(const QuadForm& q) {
    long long g = std::gcd(std::gcd(std::llabs(q.a), std::llabs(q.b)), std::llabs(q.c));
    if (g == 0) throw std::invalid_argument("primitive_part: zero form");
    return {q.a / g, q.b / g, q.c / g};
}

/// Fundamental automorph of a primitive form, from the least solution of
/// t^2 - D u^2 = 4: gamma = ((t-bu)/2, -cu; au, (t+bu)/2), trace t > 2.
inline GroupElement automorph(const QuadForm& q) {
    require_valid_disc(q.disc());
    if (!q.primitive()) throw std::invalid_argument("automorph: form must be primitive");
    long long D = q.disc();
    for (long long u = 1;; ++u) {
        long long t2 = 4 + D * u * u;
        if (t2 > (long long)4e18) throw std::overflow_error("automorph: Pell solution too large");
        if (!is_perfect_square(t2)) continue;
        long long t = isqrt_ll(t2);
        GroupElement g{(t - q.b * u) / 2, -q.c * u, q.a * u, (t + q.b * u) / 2};
        // exact verification: g^t M_Q g = M_Q, doubled to stay integral
        long long m11 = 2 * q.a, m12 = q.b, m22 = 2 * q.c;
        long long n11 = g.a * (m11 * g.a + m12 * g.c) + g.c * (m12 * g.a + m22 * g.c);
        long long n12 = g.a * (m11 * g.b + m12 * g.d) + g.c * (m12 * g.b + m22 * g.d);
        long long n22 = g.b * (m11 * g.b + m12 * g.d) + g.d * (m12 * g.b + m22 * g.d);
        if (g.det() != 1 || n11 != m11 || n12 != m12 || n22 != m22)
            throw std::logic_error("automorph: verification failed");
        return g;
    }
}

/// Katok's series sum 1 / (Q_{gamma_eta}(gz)^{k/2} j(g,z)^k) over the
/// truncated hyperbolic coset list.
inline cplx theta_katok(cplx z, int k, const GroupElement& gamma_eta, const CosetList& cosets) {
    require_weight(k);
    if (!(z.imag() > 0)) throw std::invalid_argument("theta_katok: z not in H");
    if (cosets.kind != StabilizerKind::Hyperbolic)
        throw std::invalid_argument("theta_katok: hyperbolic coset list required");
    QuadForm q = form_of(gamma_eta);
    cplx acc(0, 0);
    for (const auto& g : cosets.reps) {
        auto [w, j] = g.apply(z);
        cplx qv = q(w);
        if (std::abs(qv) < 1e-12) throw std::runtime_error("theta_katok: pole");  // roots are real
        acc += 1.0 / (ipow(qv, k / 2) * ipow(j, k));
    }
    return acc;
}

inline cplx theta_katok(cplx z, int k, const GroupElement& gamma_eta, const Fuchsian& group,
                        long long coset_bound) {
    HyperbolicDatum datum = make_hyperbolic_datum(gamma_eta);
    return theta_katok(z, k, gamma_eta, cosets_hyperbolic(group, datum, coset_bound));
}

/// Zagier's sum over primitive forms of discriminant D with entries bounded
/// by B, optionally restricted to one class.
inline cplx zagier_F(cplx z, int k, long long D, long long lattice_bound,
                     const FormClass* filter = nullptr) {
    require_weight(k);
    require_valid_disc(D);
    cplx acc(0, 0);
    for (long long a = -lattice_bound; a <= lattice_bound; ++a) {
        if (a == 0) continue;  // b^2 = D has no solution for nonsquare D
        for (long long b = -lattice_bound; b <= lattice_bound; ++b) {
            long long num = b * b - D;
            if (num % (4 * a) != 0) continue;
            long long c = num / (4 * a);
            if (std::llabs(c) > lattice_bound) continue;
            QuadForm q{a, b, c};
            if (!q.primitive()) continue;
            if (filter && !filter->contains(q)) continue;
            acc += 1.0 / ipow(q(z), k / 2);
        }
    }
    return acc;
}

/// Hyperbolic period r_k(f, gamma_eta) = int_w^{gamma w} f(z) Q(z)^{k/2-1} dz
/// along the elevated three-leg path, with the normalizing constant C_{k,gamma}.
struct HyperbolicPeriod {
    cplx value;
    double err_estimate;
};

/// Constant linking the period to the inner product against theta:
/// C_{k,gamma} <f, theta_{k,gamma}> = r_k(f, gamma).  The power of two is
/// 2^{k-2}; see the note with the D = 5, k = 12 regression in the tests.
inline double katok_constant(int k, const GroupElement& gamma_eta) {
    long long D = gamma_eta.trace() * gamma_eta.trace() - 4;
    double sgn = gamma_eta.trace() > 0 ? 1.0 : -1.0;
    return std::pow(double(D), (k - 1) / 2.0) * (-sgn / pi) / binom(k - 2, k / 2 - 1) *
           std::pow(2.0, k - 2.0);
}

template <typename F>
cplx integrate_legs(F&& f, const std::vector<cplx>& pts, int order) {
    cplx acc(0, 0);
    for (size_t i = 0; i + 1 < pts.size(); ++i) acc += gl_segment(f, pts[i], pts[i + 1], order);
    return acc;
}

inline HyperbolicPeriod hyperbolic_period(const QExpansion& f, const GroupElement& gamma_eta,
                                          cplx w, int order = 48) {
    if (classify(gamma_eta) != ElementType::Hyperbolic)
        throw std::invalid_argument("hyperbolic_period: element is not hyperbolic");
    QuadForm q = form_of(gamma_eta);
    const int k = f.weight;
    cplx w2 = gamma_eta.apply(w).image;
    double T = std::max({1.5, w.imag(), w2.imag()}) + 1.0;
    std::vector<cplx> path{w, cplx(w.real(), T), cplx(w2.real(), T), w2};
    auto integrand = [&](cplx z) { return f.eval(z) * ipow(q(z), k / 2 - 1); };
    cplx coarse = integrate_legs(integrand, path, order);
    cplx fine = integrate_legs(integrand, path, 2 * order);
    double err = std::abs(fine - coarse);
    if (err > 1e-6 * (1.0 + std::abs(fine)))
        throw std::runtime_error("hyperbolic_period: quadrature did not converge, err = " +
                                 std::to_string(err));
    return {fine, err};
}

}  // namespace phe
