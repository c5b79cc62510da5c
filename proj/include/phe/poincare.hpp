#pragma once

#include <functional>

#include "phe/cosets.hpp"
#include "phe/moebius.hpp"

namespace phe {

/// Stabilizer-invariant seed phi = A^{-1} e^{2 pi i m .}; term(g, z) evaluates
/// (phi|_k g)(z) through the composite matrix sigma^{-1} g, which keeps one
/// j-factor per term.
struct SeedFunction {
    StabilizerKind kind;
    int k = 12;
    long long m = 0;
    ScalingMat sigma_inv;
    GroupElement stab_gen;  // generator the seed is invariant under
    // hyperbolic / elliptic extras
    double log_xi = 0;
    int N = 1;
    double beta = 0;

    cplx term(const GroupElement& g, cplx z) const {
        ScalingMat M = sigma_inv * g;
        auto [w, j] = M.apply(z);
        switch (kind) {
            case StabilizerKind::Parabolic:
                return std::exp(cplx(0, 2 * pi * m) * w) / ipow(j, k);
            case StabilizerKind::Hyperbolic:
                return std::exp((cplx(0, pi * m) / log_xi - double(k) / 2.0) * std::log(w)) /
                       ipow(j, k);
            case StabilizerKind::Elliptic:
                return ipow(cplx(0, 2 * beta), k / 2) * ipow(w, N * m - k / 2) / ipow(j, k);
        }
        throw std::logic_error("SeedFunction: bad kind");
    }

    cplx operator()(cplx z) const { return term(GroupElement::identity(), z); }
};

inline void require_weight(int k) {
    if (k < 4 || k % 2 != 0)
        throw std::invalid_argument("poincare: weight must be even and >= 4");
}

inline SeedFunction parabolic_seed(int k, long long m, const ParabolicDatum& datum) {
    require_weight(k);
    if (m < 1) throw std::invalid_argument("parabolic_seed: m must be >= 1");
    SeedFunction s{StabilizerKind::Parabolic, k, m, datum.sigma_inv, datum.gamma, 0, 1, 0};
    return s;
}

inline SeedFunction hyperbolic_seed(int k, long long m, const HyperbolicDatum& datum) {
    require_weight(k);
    SeedFunction s{StabilizerKind::Hyperbolic, k, m, datum.sigma_inv, datum.gamma,
                   datum.log_xi, 1, 0};
    return s;
}

inline SeedFunction elliptic_seed(int k, long long m, const EllipticDatum& datum) {
    require_weight(k);
    if (datum.order * m - k / 2 < 0)
        throw std::invalid_argument("elliptic_seed: need N m - k/2 >= 0");
    SeedFunction s{StabilizerKind::Elliptic, k, m, datum.sigma_inv, datum.eps,
                   0, datum.order, datum.beta};
    return s;
}

struct SeriesValue {
    cplx value;
    double last_shell_mass;  // sum of |term| over the outermost shell
};

/// P[phi](z) = sum over coset reps of (phi|_k g)(z), fixed deterministic order.
inline SeriesValue relative_poincare(const SeedFunction& seed, const CosetList& cosets, cplx z) {
    if (seed.kind != cosets.kind)
        throw std::invalid_argument("relative_poincare: stabilizer kind mismatch");
    if (!(z.imag() > 0)) throw std::invalid_argument("relative_poincare: z not in H");
    cplx acc(0, 0);
    long long top = 0;
    for (long long s : cosets.shells) top = std::max(top, s);
    double shell_mass = 0;
    for (size_t i = 0; i < cosets.reps.size(); ++i) {
        cplx t = seed.term(cosets.reps[i], z);
        acc += t;
        if (cosets.shells[i] == top) shell_mass += std::abs(t);
    }
    return {acc, shell_mass};
}

/// Engine variant for an arbitrary stabilizer-invariant seed term
/// (g, z) -> (phi|_k g)(z); used for linear combinations of seeds.
inline SeriesValue relative_poincare(const std::function<cplx(const GroupElement&, cplx)>& term,
                                     const CosetList& cosets, cplx z) {
    cplx acc(0, 0);
    long long top = 0;
    for (long long s : cosets.shells) top = std::max(top, s);
    double shell_mass = 0;
    for (size_t i = 0; i < cosets.reps.size(); ++i) {
        cplx t = term(cosets.reps[i], z);
        acc += t;
        if (cosets.shells[i] == top) shell_mass += std::abs(t);
    }
    return {acc, shell_mass};
}

using HomFn = std::function<cplx(const GroupElement&)>;

/// P[phi, L](z) = sum L(g) (phi|_k g)(z).  L must vanish on the stabilizer
/// generator, otherwise the coset sum is ill-defined.
inline SeriesValue relative_poincare_twisted(const SeedFunction& seed, const HomFn& L,
                                             const CosetList& cosets, cplx z) {
    if (seed.kind != cosets.kind)
        throw std::invalid_argument("relative_poincare_twisted: stabilizer kind mismatch");
    if (std::abs(L(seed.stab_gen)) > 1e-8)
        throw std::invalid_argument("relative_poincare_twisted: L does not vanish on the stabilizer");
    cplx acc(0, 0);
    long long top = 0;
    for (long long s : cosets.shells) top = std::max(top, s);
    double shell_mass = 0;
    for (size_t i = 0; i < cosets.reps.size(); ++i) {
        cplx t = L(cosets.reps[i]) * seed.term(cosets.reps[i], z);
        acc += t;
        if (cosets.shells[i] == top) shell_mass += std::abs(t);
    }
    return {acc, shell_mass};
}

/// Star variant summed over the whole group ball (no stabilizer
/// dedup): (2 i beta)^{k/2} sum_gamma (sigma^{-1} gamma z)^l / j(sigma^{-1} gamma, z)^k.
/// Equals N Phi_Ell(z, (l+k/2)/N) when l = -k/2 (mod N) and 0 otherwise.
inline cplx phi_elliptic_star(cplx z, int k, long long l, const EllipticDatum& datum,
                              const Fuchsian& group, long long entry_max) {
    require_weight(k);
    if (l < 0) throw std::invalid_argument("phi_elliptic_star: l must be >= 0");
    cplx acc(0, 0);
    const cplx pref = ipow(cplx(0, 2 * datum.beta), k / 2);
    for (const auto& g : group_ball(group, entry_max)) {
        ScalingMat M = datum.sigma_inv * g;
        auto [w, j] = M.apply(z);
        acc += pref * ipow(w, l) / ipow(j, k);
    }
    return acc;
}

// Convenience wrappers for the six standard series.

inline SeriesValue phi_parabolic(cplx z, int k, long long m, const ParabolicDatum& datum,
                                 const Fuchsian& group, long long bound) {
    return relative_poincare(parabolic_seed(k, m, datum), cosets_parabolic(group, datum, bound), z);
}

inline SeriesValue phi_hyperbolic(cplx z, int k, long long m, const HyperbolicDatum& datum,
                                  const Fuchsian& group, long long bound) {
    return relative_poincare(hyperbolic_seed(k, m, datum), cosets_hyperbolic(group, datum, bound),
                             z);
}

inline SeriesValue phi_elliptic(cplx z, int k, long long m, const EllipticDatum& datum,
                                const Fuchsian& group, long long bound) {
    return relative_poincare(elliptic_seed(k, m, datum), cosets_elliptic(group, datum, bound), z);
}

}  // namespace phe
