#pragma once

#include <cstdio>
#include <map>
#include <memory>
#include <mutex>

#include "phe/expansions.hpp"
#include "phe/forms.hpp"
#include "phe/poincare.hpp"

namespace phe {

/// Element of Hom_0(Gamma, C) realized by a pair of weight-2 cusp forms:
/// L(g) = int_z^{gz} f+ dw + conj(int_z^{gz} f- dw), independent of z and path.
///
/// Evaluation uses the termwise antiderivative F(z) = sum a(n) e(nz)/(2 pi i n)
/// (the elevated path integrated leg-by-leg in closed form).  For g with
/// lower-left entry c != 0 the difference is taken at the balanced point
/// w* = (-d + i)/c, which keeps both endpoints at height 1/|c|; right
/// translations are stripped first since L(T) = 0.
class PeriodHom {
  public:
    PeriodHom(QExpansion f_plus, QExpansion f_minus, Fuchsian group, cplx base = cplx(0.0, 1.5))
        : fp_(std::move(f_plus)), fm_(std::move(f_minus)), group_(std::move(group)), base_(base) {
        if (!fp_.is_zero() && fp_.weight != 2)
            throw std::invalid_argument("PeriodHom: f+ must have weight 2");
        if (!fm_.is_zero() && fm_.weight != 2)
            throw std::invalid_argument("PeriodHom: f- must have weight 2");
        auto suffix = [](const QExpansion& f) {
            std::vector<double> s(f.coeffs.size() + 1, 0.0);
            for (size_t n = f.coeffs.size(); n-- > 0;)
                s[n] = std::max(s[n + 1], std::abs(f.coeffs[n]));
            return s;
        };
        sp_ = suffix(fp_);
        sm_ = suffix(fm_);
    }

    const QExpansion& f_plus() const { return fp_; }
    const QExpansion& f_minus() const { return fm_; }
    cplx base() const { return base_; }
    const Fuchsian& group() const { return group_; }

    /// Antiderivative of f from the termwise series; with abs_tol > 0 the sum
    /// is truncated once the suffix-maximum tail bound drops below abs_tol.
    static cplx antideriv(const QExpansion& f, cplx z, double abs_tol = 0.0,
                          const std::vector<double>* suffix = nullptr) {
        if (f.is_zero()) return 0.0;
        f.check_height(z);
        long long cut = f.effective_order(z.imag());
        if (abs_tol > 0 && suffix) {
            const double y = z.imag();
            const double damp = 1.0 - std::exp(-2 * pi * y);
            long long n = 16;
            auto tail_ok = [&](long long m) {
                return (*suffix)[std::min<size_t>(m + 1, suffix->size() - 1)] *
                           std::exp(-2 * pi * (m + 1) * y) / damp <=
                       abs_tol;
            };
            while (n < cut && !tail_ok(n)) n += n / 2;
            cut = std::min(cut, n);
        }
        const cplx q = std::exp(cplx(0, 2 * pi) * z);
        cplx acc(0, 0);
        for (long long n = cut; n >= 1; --n) acc = acc * q + f.coeffs[n] / double(n);
        return acc * q / cplx(0, 2 * pi);
    }

    cplx lambda_plus(cplx z) const { return antideriv(fp_, z) - antideriv(fp_, cplx(0, 1)); }
    cplx lambda_minus(cplx z) const { return antideriv(fm_, z) - antideriv(fm_, cplx(0, 1)); }

    cplx eval(const GroupElement& g_in, double abs_tol = 0.0) const {
        if (!group_.contains(g_in)) throw std::invalid_argument("PeriodHom: element not in group");
        GroupElement g = g_in;
        if (g.c < 0 || (g.c == 0 && g.d < 0)) g = -g;
        if (g.c == 0) return 0.0;  // translation: horizontal period of a cusp form
        // L(T^s g T^t) = L(g), so only (c, d mod c) matters; reduce both sides
        long long t = std::llround(double(g.d) / double(g.c));
        g = g * GroupElement{1, -t, 0, 1};
        long long s = std::llround(double(g.a) / double(g.c));
        g = GroupElement{1, -s, 0, 1} * g;
        auto key = g.key();
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = memo_.find(key);
            if (it != memo_.end() && it->second.first <= abs_tol * 1.01 + 1e-300)
                return it->second.second;
        }
        cplx w1(-double(g.d) / double(g.c), 1.0 / double(g.c));
        cplx w2 = g.apply(w1).image;
        cplx v = (antideriv(fp_, w2, abs_tol, &sp_) - antideriv(fp_, w1, abs_tol, &sp_)) +
                 std::conj(antideriv(fm_, w2, abs_tol, &sm_) - antideriv(fm_, w1, abs_tol, &sm_));
        std::lock_guard<std::mutex> lock(mu_);
        auto [it, fresh] = memo_.emplace(key, std::pair{abs_tol, v});
        if (!fresh && abs_tol < it->second.first) it->second = {abs_tol, v};
        return v;
    }

    cplx operator()(const GroupElement& g) const { return eval(g); }

    HomFn as_fn() const {
        return [this](const GroupElement& g) { return eval(g); };
    }

    /// Evaluator with the tolerance graded by the row steepness: a row of
    /// lower-left entry c contributes weight-k terms of size at most
    /// ~ (c y)^{-k}, so its L value only needs a matching absolute accuracy.
    HomFn as_fn_graded(double base_tol = 1e-11) const {
        return [this, base_tol](const GroupElement& g) {
            double c = std::max<double>(1.0, std::llabs(g.c));
            double tol = std::min(1e-3, base_tol * std::pow(c / 22.0, 4.0));
            return eval(g, tol);
        };
    }

  private:
    QExpansion fp_, fm_;
    std::vector<double> sp_, sm_;  // suffix maxima of |coeffs|
    Fuchsian group_;
    cplx base_;
    mutable std::map<std::array<long long, 4>, std::pair<double, cplx>> memo_;
    mutable std::mutex mu_;
};

inline PeriodHom period_hom(QExpansion f_plus, QExpansion f_minus, const Fuchsian& group,
                            cplx base = cplx(0.0, 1.5)) {
    return PeriodHom(std::move(f_plus), std::move(f_minus), group, base);
}

struct LambdaPair {
    Evaluator plus, minus;
};

inline LambdaPair lambda_pair(const PeriodHom& L) {
    return {[&L](cplx z) { return L.lambda_plus(z); },
            [&L](cplx z) { return L.lambda_minus(z); }};
}

/// Oracle route for L(g): numeric quadrature along the elevated path
/// base -> base + iT -> g(base) + iT -> g(base), per leg.  Used to
/// cross-check the antiderivative evaluation and path independence.
inline cplx period_hom_by_quadrature(const PeriodHom& L, const GroupElement& g, double T,
                                     int order = 64) {
    cplx zb = L.base();
    cplx zg = g.apply(zb).image;
    std::vector<cplx> path{zb, cplx(zb.real(), T), cplx(zg.real(), T), zg};
    auto leg_integral = [&](const QExpansion& f) -> cplx {
        if (f.is_zero()) return 0.0;
        cplx acc(0, 0);
        for (size_t i = 0; i + 1 < path.size(); ++i) {
            cplx a = path[i], b = path[i + 1];
            // geometric panels toward a low endpoint keep the q-series resolved
            double lo = std::min(a.imag(), b.imag());
            int panels = std::max(1, (int)std::ceil(std::log2(std::max(1.0, T / std::max(lo, 1e-4)))));
            for (int p = 0; p < panels; ++p) {
                cplx pa = a + (b - a) * (double(p) / panels);
                cplx pb = a + (b - a) * (double(p + 1) / panels);
                acc += gl_segment([&](cplx w) { return f.eval(w); }, pa, pb, order);
            }
        }
        return acc;
    };
    return leg_integral(L.f_plus()) + std::conj(leg_integral(L.f_minus()));
}

// ---------------------------------------------------------------------------

struct SecondOrderSeries {
    SeedFunction seed;
    CosetList cosets;
    const PeriodHom* hom;
    SeriesValue eval(cplx z) const { return relative_poincare_twisted(seed, hom->as_fn(), cosets, z); }
    cplx operator()(cplx z) const { return eval(z).value; }
};

/// Wire a twisted series.  Side conditions: parabolic needs m >= 1 (enforced
/// by the seed), hyperbolic needs L(gamma_eta) = 0, elliptic needs Nm - k/2 >= 0.
inline SecondOrderSeries build_second_order(int k, long long m, const ParabolicDatum& datum,
                                            const PeriodHom& L, const Fuchsian& group,
                                            long long bound) {
    return {parabolic_seed(k, m, datum), cosets_parabolic(group, datum, bound), &L};
}

inline SecondOrderSeries build_second_order(int k, long long m, const HyperbolicDatum& datum,
                                            const PeriodHom& L, const Fuchsian& group,
                                            long long bound) {
    if (std::abs(L(datum.gamma)) > 1e-8)
        throw std::invalid_argument("build_second_order: L(gamma_eta) must vanish");
    return {hyperbolic_seed(k, m, datum), cosets_hyperbolic(group, datum, bound), &L};
}

inline SecondOrderSeries build_second_order(int k, long long m, const EllipticDatum& datum,
                                            const PeriodHom& L, const Fuchsian& group,
                                            long long bound) {
    return {elliptic_seed(k, m, datum), cosets_elliptic(group, datum, bound), &L};
}

/// Numerical rank of [f_i(z_j)] by singular values of the Gram matrix,
/// thresholded at tol * sigma_max.
inline int gram_rank(const std::vector<Evaluator>& fns, const std::vector<cplx>& points,
                     double tol = 1e-6) {
    const size_t n = fns.size(), m = points.size();
    if (m < n) throw std::invalid_argument("gram_rank: need at least as many points as functions");
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j)
            if (std::abs(points[i] - points[j]) < 1e-12)
                std::fprintf(stderr, "gram_rank: warning, degenerate sample points\n");
    std::vector<std::vector<cplx>> A(m, std::vector<cplx>(n));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < n; ++j) A[i][j] = fns[j](points[i]);
    // H = A^H A, then Jacobi eigenvalues of the Hermitian n x n matrix
    std::vector<std::vector<cplx>> H(n, std::vector<cplx>(n, 0.0));
    for (size_t p = 0; p < n; ++p)
        for (size_t q = 0; q < n; ++q)
            for (size_t i = 0; i < m; ++i) H[p][q] += std::conj(A[i][p]) * A[i][q];
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0;
        for (size_t p = 0; p < n; ++p)
            for (size_t q = p + 1; q < n; ++q) off += std::norm(H[p][q]);
        if (off < 1e-30) break;
        for (size_t p = 0; p < n; ++p)
            for (size_t q = p + 1; q < n; ++q) {
                cplx hpq = H[p][q];
                if (std::abs(hpq) == 0.0) continue;
                double app = H[p][p].real(), aqq = H[q][q].real();
                cplx phase = hpq / std::abs(hpq);
                double theta = 0.5 * std::atan2(2.0 * std::abs(hpq), app - aqq);
                double cs = std::cos(theta), sn = std::sin(theta);
                for (size_t r = 0; r < n; ++r) {
                    cplx hrp = H[r][p], hrq = H[r][q];
                    H[r][p] = hrp * cs + hrq * std::conj(phase) * sn;
                    H[r][q] = -hrp * phase * sn + hrq * cs;
                }
                for (size_t r = 0; r < n; ++r) {
                    cplx hpr = H[p][r], hqr = H[q][r];
                    H[p][r] = hpr * cs + hqr * phase * sn;
                    H[q][r] = -hpr * std::conj(phase) * sn + hqr * cs;
                }
            }
    }
    double smax = 0;
    std::vector<double> sv(n);
    for (size_t p = 0; p < n; ++p) {
        sv[p] = std::sqrt(std::max(0.0, H[p][p].real()));
        smax = std::max(smax, sv[p]);
    }
    int rank = 0;
    for (double s : sv)
        if (s > tol * smax) ++rank;
    return rank;
}

/// max over points of |(f|_k(eps - 1))(z)|.
inline double elliptic_invariance_check(const Evaluator& f, int k, const GroupElement& eps,
                                        const std::vector<cplx>& points) {
    double worst = 0;
    for (cplx z : points) worst = std::max(worst, std::abs(slash_eval(f, k, eps, z) - f(z)));
    return worst;
}

/// Elliptic fixed-point counts nu_2, nu_3 of Gamma0(N) via the standard
/// product formulas; true iff the group has torsion.
inline bool has_elliptic_elements(const Fuchsian& group) {
    const long long N = group.level;
    if (N == 1) return true;
    auto legendre = [](long long a, long long p) -> int {
        a %= p;
        if (a < 0) a += p;
        if (a == 0) return 0;
        long long r = 1, base = a, e = (p - 1) / 2;
        while (e) {
            if (e & 1) r = r * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return r == 1 ? 1 : -1;
    };
    long long nu2 = (N % 4 == 0) ? 0 : 1;
    long long nu3 = (N % 9 == 0) ? 0 : 1;
    long long n = N;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        while (n % p == 0) n /= p;
        if (p != 2) nu2 *= 1 + legendre(-1, p);
        if (p == 2) nu3 = 0;                          // (-3|2) = -1
        else if (p != 3) nu3 *= 1 + legendre(-3, p);  // (p = 3 exactly: factor 1)
    }
    if (n > 1) {
        if (n != 2) nu2 *= 1 + legendre(-1, n);
        if (n == 2) nu3 = 0;
        else if (n != 3) nu3 *= 1 + legendre(-3, n);
    }
    return nu2 > 0 || nu3 > 0;
}

}  // namespace phe
