#pragma once

#include <functional>

#include "phe/forms.hpp"
#include "phe/moebius.hpp"

namespace phe {

using Evaluator = std::function<cplx(cplx)>;

enum class ExpTag { Par, Hyp, Ell };

/// Expansion coefficients of one form at one fixed-point datum.
/// Par: b(m), m >= 1.  Hyp: b_eta(m), |m| <= window.  Ell: c(l), l >= 0.
struct ExpansionCoeffs {
    ExpTag tag;
    std::vector<std::pair<long long, cplx>> entries;
    double sample_param = 0;  // extraction height y, or contour radius
    int sample_count = 0;

    cplx value(long long idx) const {
        for (const auto& [i, v] : entries)
            if (i == idx) return v;
        throw std::out_of_range("ExpansionCoeffs: index not extracted");
    }
};

/// Index bookkeeping between the two elliptic labelings: c(l) = b((l+k/2)/N)
/// when l = -k/2 (mod N), and zero otherwise.
inline bool ell_index_supported(long long l, int k, int N) {
    return ((l + k / 2) % N) == 0;
}
inline long long ell_index_to_b(long long l, int k, int N) {
    if (!ell_index_supported(l, k, N))
        throw std::invalid_argument("ell_index_to_b: index not congruent to -k/2 mod N");
    return (l + k / 2) / N;
}
inline long long ell_index_from_b(long long m, int k, int N) { return N * m - k / 2; }

// ---------------------------------------------------------------------------
// The three period-1 conversion operators and their inverses.

/// A_a f = f|_k sigma_a, period 1 on H.
inline Evaluator op_A_parabolic(Evaluator f, int k, const ParabolicDatum& datum) {
    return [f = std::move(f), k, sigma = datum.sigma](cplx z) {
        return slash_eval(f, k, sigma, z);
    };
}

inline Evaluator op_A_inv_parabolic(Evaluator g, int k, const ParabolicDatum& datum) {
    return [g = std::move(g), k, si = datum.sigma_inv](cplx z) {
        return slash_eval(g, k, si, z);
    };
}

/// (A_eta f)(z) = xi^{kz} (f|_k sigma_eta)(xi^{2z}), period 1 on the strip
/// 0 < Im z < pi / (2 log xi).
inline Evaluator op_A_hyperbolic(Evaluator f, int k, const HyperbolicDatum& datum) {
    return [f = std::move(f), k, sigma = datum.sigma, lx = datum.log_xi](cplx z) {
        if (!(z.imag() > 0.0) || !(z.imag() < pi / (2 * lx)))
            throw std::domain_error("op_A_hyperbolic: z outside the strip 0 < Im z < pi/(2 log xi)");
        cplx w = std::exp(2.0 * lx * z);
        return std::exp(double(k) * lx * z) * slash_eval(f, k, sigma, w);
    };
}

/// A_eta^{-1} g = (B_eta g)|_k sigma_eta^{-1} with (B_eta g)(w) = w^{-k/2} g(log w / (2 log xi)).
inline Evaluator op_A_inv_hyperbolic(Evaluator g, int k, const HyperbolicDatum& datum) {
    return [g = std::move(g), k, si = datum.sigma_inv, lx = datum.log_xi](cplx z) {
        auto B = [&](cplx w) {
            return std::exp(double(-k) / 2.0 * std::log(w)) * g(std::log(w) / (2.0 * lx));
        };
        return slash_eval(B, k, si, z);
    };
}

/// (A_{z0} f)(z) = zeta^{kz} (f|_k sigma_{z0})(zeta^{2z}), period 1 for Im z > 0.
inline Evaluator op_A_elliptic(Evaluator f, int k, const EllipticDatum& datum) {
    return [f = std::move(f), k, sigma = datum.sigma, N = datum.order](cplx z) {
        if (!(z.imag() > 0.0)) throw std::domain_error("op_A_elliptic: Im z must be positive");
        const cplx logzeta(0, pi / N);
        cplx w = std::exp(2.0 * logzeta * z);
        return std::exp(double(k) * logzeta * z) * slash_eval(f, k, sigma, w);
    };
}

/// A_{z0}^{-1} g = (B g)|_k sigma_{z0}^{-1} with (B g)(w) = w^{-k/2} g(N log w / (2 pi i)).
inline Evaluator op_A_inv_elliptic(Evaluator g, int k, const EllipticDatum& datum) {
    return [g = std::move(g), k, si = datum.sigma_inv, N = datum.order](cplx z) {
        auto B = [&](cplx w) {
            return std::exp(double(-k) / 2.0 * std::log(w)) *
                   g(double(N) * std::log(w) / cplx(0, 2 * pi));
        };
        return slash_eval(B, k, si, z);
    };
}

// ---------------------------------------------------------------------------
// Coefficient extraction by equispaced Fourier sums (spectrally accurate for
// holomorphic period-1 functions).

/// (1/K) sum_j g(j/K + iy) e^{-2 pi i m j/K}; caller rescales by e^{2 pi m y}.
inline cplx periodic_fourier_coeff(const Evaluator& g, long long m, double y, int K) {
    cplx acc(0, 0);
    for (int j = 0; j < K; ++j) {
        double x = double(j) / K;
        acc += g(cplx(x, y)) * std::exp(cplx(0, -2 * pi * m * x));
    }
    return acc / double(K);
}

inline int fourier_node_count(long long m_max) { return int(std::max<long long>(64, 8 * m_max)); }

inline ExpansionCoeffs parabolic_coeffs(const Evaluator& f, int k, const ParabolicDatum& datum,
                                        long long m_max, double y_sample) {
    if (m_max < 1) throw std::invalid_argument("parabolic_coeffs: m_max must be >= 1");
    if (!(y_sample > 0)) throw std::invalid_argument("parabolic_coeffs: need y_sample > 0");
    Evaluator g = op_A_parabolic(f, k, datum);
    const int K = fourier_node_count(m_max);
    ExpansionCoeffs out{ExpTag::Par, {}, y_sample, K};
    for (long long m = 1; m <= m_max; ++m)
        out.entries.emplace_back(m, std::exp(2 * pi * m * y_sample) *
                                        periodic_fourier_coeff(g, m, y_sample, K));
    return out;
}

inline ExpansionCoeffs parabolic_coeffs(const QExpansion& f, const ParabolicDatum& datum,
                                        long long m_max, double y_sample) {
    return parabolic_coeffs([&f](cplx z) { return f.eval(z); }, f.weight, datum, m_max, y_sample);
}

/// Modes m >= 0 are sampled at y_sample, modes m < 0 at the reflected height
/// strip - y_sample: each mode is read off where it dominates, since the
/// coefficients grow like e^{2 pi |m| y} toward the strip edge it lives on.
inline ExpansionCoeffs hyperbolic_coeffs(const Evaluator& f, int k, const HyperbolicDatum& datum,
                                         long long m_window, double y_sample) {
    const double strip = pi / (2 * datum.log_xi);
    if (!(y_sample > 0 && y_sample < strip))
        throw std::domain_error("hyperbolic_coeffs: y_sample outside the strip");
    Evaluator g = op_A_hyperbolic(f, k, datum);
    const int K = fourier_node_count(std::max<long long>(m_window, 1));
    ExpansionCoeffs out{ExpTag::Hyp, {}, y_sample, K};
    for (long long m = -m_window; m <= m_window; ++m) {
        double y = m >= 0 ? y_sample : strip - y_sample;
        out.entries.emplace_back(m, std::exp(2 * pi * m * y) * periodic_fourier_coeff(g, m, y, K));
    }
    return out;
}

inline ExpansionCoeffs hyperbolic_coeffs(const QExpansion& f, const HyperbolicDatum& datum,
                                         long long m_window, double y_sample) {
    return hyperbolic_coeffs([&f](cplx z) { return f.eval(z); }, f.weight, datum, m_window,
                             y_sample);
}

/// Taylor-to-elliptic conversion:
/// c(m) = sum_{r<=m} binom(m+k-1, r+k-1) (2 i beta)^{r+k/2} f^{(r)}(z0) / r!.
inline ExpansionCoeffs elliptic_coeffs_taylor(const QExpansion& f, const EllipticDatum& datum,
                                              long long m_max) {
    const int k = f.weight;
    if (m_max > 40) throw std::invalid_argument("elliptic_coeffs_taylor: derivative cap exceeded");
    std::vector<cplx> derivs(m_max + 1);
    for (long long r = 0; r <= m_max; ++r) derivs[r] = f.eval_deriv(int(r), datum.z0);
    const cplx tib(0, 2 * datum.beta);
    ExpansionCoeffs out{ExpTag::Ell, {}, 0.0, int(m_max + 1)};
    for (long long m = 0; m <= m_max; ++m) {
        cplx acc(0, 0);
        for (long long r = 0; r <= m; ++r)
            acc += binom(m + k - 1, r + k - 1) * ipow(tib, r + k / 2) * derivs[r] / factorial(int(r));
        out.entries.emplace_back(m, acc);
    }
    return out;
}

/// Cauchy-coefficient route: c(m) = r^{-m} (1/K) sum_j (f|_k sigma)(r e^{i th_j}) e^{-i m th_j}.
inline ExpansionCoeffs elliptic_coeffs_contour(const Evaluator& f, int k,
                                               const EllipticDatum& datum, long long m_max,
                                               double radius = 0.5, double y_floor = 0.0) {
    if (!(radius > 0 && radius < 1))
        throw std::invalid_argument("elliptic_coeffs_contour: radius must be in (0,1)");
    // image heights stay above beta (1-r)/(1+r); reject if that dips below the floor
    double h_min = datum.beta * (1 - radius) / (1 + radius);
    if (h_min < y_floor)
        throw std::domain_error("elliptic_coeffs_contour: contour image dips below y_min");
    const int K = fourier_node_count(std::max<long long>(m_max, 1));
    ExpansionCoeffs out{ExpTag::Ell, {}, radius, K};
    std::vector<cplx> samples(K);
    for (int j = 0; j < K; ++j) {
        cplx w = radius * std::exp(cplx(0, 2 * pi * j / K));
        samples[j] = slash_eval(f, k, datum.sigma, w);
    }
    for (long long m = 0; m <= m_max; ++m) {
        cplx acc(0, 0);
        for (int j = 0; j < K; ++j)
            acc += samples[j] * std::exp(cplx(0, -2 * pi * m * j / double(K)));
        out.entries.emplace_back(m, acc / double(K) * std::pow(radius, double(-m)));
    }
    return out;
}

inline ExpansionCoeffs elliptic_coeffs_contour(const QExpansion& f, const EllipticDatum& datum,
                                               long long m_max, double radius = 0.5) {
    return elliptic_coeffs_contour([&f](cplx z) { return f.eval(z); }, f.weight, datum, m_max,
                                   radius, f.y_min);
}

}  // namespace phe
