#pragma once

#include <algorithm>
#include <set>

#include "phe/moebius.hpp"

namespace phe {

enum class StabilizerKind { Parabolic, Hyperbolic, Elliptic };

/// One representative per left coset of the stabilizer, deterministic order.
/// shells[i] is the truncation shell the i-th rep was found in (max |entry|
/// for ball enumerations, max(|c|,|d|) of the bottom row for parabolic).
struct CosetList {
    StabilizerKind kind;
    Fuchsian group;
    long long bound = 0;
    std::vector<GroupElement> reps;
    std::vector<long long> shells;
};

/// All PSL2 classes of group elements with max |entry| <= entry_max,
/// enumerated via coprime bottom rows plus the top-row family a = a0 + t c.
inline std::vector<GroupElement> group_ball(const Fuchsian& group, long long entry_max) {
    if (entry_max < 1) throw std::invalid_argument("group_ball: bound must be >= 1");
    std::vector<GroupElement> out;
    for (long long b = -entry_max; b <= entry_max; ++b) out.push_back({1, b, 0, 1});
    for (long long c = group.level; c <= entry_max; c += group.level) {
        for (long long d = -entry_max; d <= entry_max; ++d) {
            long long x, y;
            if (egcd(c, d, x, y) != 1) continue;
            long long a0 = ((y % c) + c) % c;  // a*d - b*c = 1 with a = y
            long long start = a0 - c * ((a0 + entry_max) / c);
            for (long long a = start; a <= entry_max; a += c) {
                long long bb = (a * d - 1) / c;  // exact: a*d = 1 (mod c)
                if (std::llabs(bb) > entry_max) continue;
                out.push_back({a, bb, c, d});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const GroupElement& g, const GroupElement& h) {
        return std::array{g.entry_max(), g.a, g.b, g.c, g.d} <
               std::array{h.entry_max(), h.a, h.b, h.c, h.d};
    });
    return out;
}

namespace detail {

inline bool lex_less(const GroupElement& g, const GroupElement& h) {
    return g.key() < h.key();
}

// Orbit segment {gamma_eta^n g : entries fit} is independent of the starting
// point within the orbit, so its lexicographic minimum is a canonical form.
inline GroupElement canonical_hyperbolic_rep(const GroupElement& gamma_eta, const GroupElement& g) {
    const long long cap = 2'000'000'000'000'000LL;
    GroupElement best = sign_normalized(g);
    for (int dir = 0; dir < 2; ++dir) {
        GroupElement step = dir == 0 ? gamma_eta : gamma_eta.inverse();
        GroupElement cur = g;
        for (int it = 0; it < 256; ++it) {
            cur = step * cur;
            if (cur.entry_max() > cap) break;
            GroupElement cn = sign_normalized(cur);
            if (lex_less(cn, best)) best = cn;
        }
    }
    return best;
}

inline GroupElement canonical_elliptic_rep(const EllipticDatum& datum, const GroupElement& g) {
    GroupElement best = sign_normalized(g);
    GroupElement cur = g;
    for (int i = 1; i < datum.order; ++i) {
        cur = datum.eps * cur;
        GroupElement cn = sign_normalized(cur);
        if (lex_less(cn, best)) best = cn;
    }
    return best;
}

}  // namespace detail

/// Cosets of the cusp stabilizer. One rep per bottom row +-(c,d), gcd(c,d)=1,
/// 0 <= c <= c_max, |d| <= c_max, c = 0 contributing the identity coset; for
/// a cusp other than infinity the rows are taken in the sigma-conjugated group
/// and mapped back.
inline CosetList cosets_parabolic(const Fuchsian& group, const ParabolicDatum& datum,
                                  long long c_max) {
    if (c_max < 1) throw std::invalid_argument("cosets_parabolic: bound must be >= 1");
    CosetList out{StabilizerKind::Parabolic, group, c_max, {}, {}};
    struct Row {
        long long c, d;
    };
    std::vector<Row> rows;
    rows.push_back({0, 1});
    for (long long c = group.level; c <= c_max; c += group.level)
        for (long long d = -c_max; d <= c_max; ++d)
            if (std::gcd(c, std::llabs(d)) == 1) rows.push_back({c, d});
    std::sort(rows.begin(), rows.end(), [](const Row& r, const Row& s) {
        return std::array{r.c, std::llabs(r.d), r.d} < std::array{s.c, std::llabs(s.d), s.d};
    });
    const bool at_zero = !datum.cusp.is_infinity();
    for (const auto& [c, d] : rows) {
        GroupElement g;
        if (c == 0) {
            g = GroupElement::identity();
        } else {
            long long x, y;
            egcd(c, d, x, y);
            long long a = y % c, b;
            if (std::llabs(a - c) < std::llabs(a)) a -= c;
            if (std::llabs(a + c) < std::llabs(a)) a += c;
            b = (a * d - 1) / c;
            g = GroupElement{a, b, c, d};
        }
        if (at_zero) {
            // conjugate back through sigma_0: (a,b;c,d) -> (d, -c/N; -bN, a)
            g = GroupElement{g.d, -g.c / group.level, -g.b * group.level, g.a};
        }
        out.reps.push_back(sign_normalized(g));
        out.shells.push_back(std::max(c, std::llabs(d)));
    }
    return out;
}

/// Cosets of <gamma_eta> intersecting the entry ball, canonicalized by the
/// exact lexicographic minimum over the gamma_eta-orbit.
inline CosetList cosets_hyperbolic(const Fuchsian& group, const HyperbolicDatum& datum,
                                   long long entry_max) {
    CosetList out{StabilizerKind::Hyperbolic, group, entry_max, {}, {}};
    std::set<std::array<long long, 4>> seen;
    for (const auto& g : group_ball(group, entry_max)) {
        GroupElement rep = detail::canonical_hyperbolic_rep(datum.gamma, g);
        if (seen.insert(rep.key()).second) {
            out.reps.push_back(rep);
            out.shells.push_back(rep.entry_max());
        }
    }
    std::vector<size_t> idx(out.reps.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](size_t i, size_t j) {
        return std::array{out.shells[i], out.reps[i].a, out.reps[i].b, out.reps[i].c,
                          out.reps[i].d} <
               std::array{out.shells[j], out.reps[j].a, out.reps[j].b, out.reps[j].c,
                          out.reps[j].d};
    });
    CosetList sorted{out.kind, out.group, out.bound, {}, {}};
    for (size_t i : idx) {
        sorted.reps.push_back(out.reps[i]);
        sorted.shells.push_back(out.shells[i]);
    }
    return sorted;
}

/// Cosets of the elliptic stabilizer intersecting the entry ball; canonical
/// rep is the lexicographically least of {eps^i g} after sign normalization.
inline CosetList cosets_elliptic(const Fuchsian& group, const EllipticDatum& datum,
                                 long long entry_max) {
    CosetList out{StabilizerKind::Elliptic, group, entry_max, {}, {}};
    std::set<std::array<long long, 4>> seen;
    for (const auto& g : group_ball(group, entry_max)) {
        GroupElement rep = detail::canonical_elliptic_rep(datum, g);
        if (seen.insert(rep.key()).second) {
            out.reps.push_back(rep);
            out.shells.push_back(rep.entry_max());
        }
    }
    std::sort(out.reps.begin(), out.reps.end(), [](const GroupElement& g, const GroupElement& h) {
        return std::array{g.entry_max(), g.a, g.b, g.c, g.d} <
               std::array{h.entry_max(), h.a, h.b, h.c, h.d};
    });
    for (size_t i = 0; i < out.reps.size(); ++i) out.shells[i] = out.reps[i].entry_max();
    return out;
}

}  // namespace phe
