#pragma once

#include <limits>
#include <string>

#include "phe/numeric.hpp"

namespace phe {

namespace detail {

using int128 = __int128;

// acc *= (1 - q^step)^count, truncated at degree M
inline void mul_binomial(std::vector<int128>& acc, long long step, int count) {
    const long long M = (long long)acc.size() - 1;
    for (int r = 0; r < count; ++r)
        for (long long i = M - step; i >= 0; --i) acc[i + step] -= acc[i];
}

inline std::vector<int128> mul_poly(const std::vector<int128>& p, const std::vector<int128>& q) {
    const long long M = (long long)p.size() - 1;
    std::vector<int128> out(M + 1, 0);
    for (long long i = 0; i <= M; ++i) {
        if (p[i] == 0) continue;
        for (long long j = 0; j + i <= M; ++j) out[i + j] += p[i] * q[j];
    }
    return out;
}

}  // namespace detail

/// Truncated q-expansion of a holomorphic cusp form: coeffs[n] multiplies q^n,
/// coeffs[0] = 0, with a crude certified tail majorant |a(n)| <= n^weight.
struct QExpansion {
    int weight = 12;
    long long group_level = 1;
    std::string label;
    std::vector<double> coeffs;  // index 0..M
    double y_min = 0.05;

    long long order() const { return (long long)coeffs.size() - 1; }
    bool is_zero() const { return coeffs.size() <= 1; }

    static QExpansion zero(int k, long long level = 1) {
        return {k, level, "zero", {0.0}, 0.0};
    }

    double tail_bound(double y) const {
        const long long M = order();
        double acc = 0.0;
        long long n = M + 1;
        for (; n <= M + 200; ++n) acc += std::pow(double(n), weight) * std::exp(-2 * pi * n * y);
        double ratio = std::pow(double(n + 1) / double(n), weight) * std::exp(-2 * pi * y);
        if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
        acc += std::pow(double(n), weight) * std::exp(-2 * pi * n * y) / (1.0 - ratio);
        return acc;
    }

    void check_height(cplx z) const {
        if (!(z.imag() >= y_min))
            throw std::domain_error(label + ": evaluation below y_min = " + std::to_string(y_min));
    }

    // terms beyond e^{-2 pi n y} ~ e^{-48} cannot move a double result
    long long effective_order(double y) const {
        return std::min(order(), (long long)std::ceil(48.0 / (2 * pi * y)) + 8);
    }

    cplx eval(cplx z) const {
        check_height(z);
        const cplx q = std::exp(cplx(0, 2 * pi) * z);
        cplx acc(0, 0);
        for (long long n = effective_order(z.imag()); n >= 1; --n) acc = acc * q + coeffs[n];
        return acc * q;
    }

    /// r-th derivative: sum a(n) (2 pi i n)^r q^n, r <= 40.
    cplx eval_deriv(int r, cplx z) const {
        if (r < 0 || r > 40) throw std::invalid_argument("eval_deriv: order must be in [0, 40]");
        if (r == 0) return eval(z);
        check_height(z);
        const cplx q = std::exp(cplx(0, 2 * pi) * z);
        const cplx tpi = cplx(0, 2 * pi);
        cplx acc(0, 0);
        for (long long n = std::min(order(), effective_order(z.imag()) + 10 * r); n >= 1; --n)
            acc = acc * q + coeffs[n] * std::pow(double(n), r);
        return acc * q * ipow(tpi, r);
    }
};

/// Exact Ramanujan tau values tau(1..M) via the 24th power of the Euler product.
inline std::vector<long long> delta_tau(long long M) {
    if (M < 1) throw std::invalid_argument("delta_tau: order must be >= 1");
    std::vector<detail::int128> e(M, 0);  // degree M-1 is enough before the q shift
    e[0] = 1;
    for (long long n = 1; n < M; ++n) detail::mul_binomial(e, n, 1);
    auto e2 = detail::mul_poly(e, e);
    auto e4 = detail::mul_poly(e2, e2);
    auto e8 = detail::mul_poly(e4, e4);
    auto e16 = detail::mul_poly(e8, e8);
    auto e24 = detail::mul_poly(e16, e8);
    std::vector<long long> tau(M + 1, 0);
    for (long long n = 1; n <= M; ++n) {
        detail::int128 v = e24[n - 1];
        if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
            throw std::overflow_error("delta_tau: coefficient exceeds 64 bits");
        tau[n] = (long long)v;
    }
    return tau;
}

/// Delta = q prod (1-q^n)^24 on SL2(Z), weight 12.
inline QExpansion delta_qexp(long long M, double y_min = 0.05) {
    QExpansion f;
    f.weight = 12;
    f.group_level = 1;
    f.label = "delta";
    f.y_min = y_min;
    auto tau = delta_tau(M);
    f.coeffs.assign(M + 1, 0.0);
    for (long long n = 1; n <= M; ++n) f.coeffs[n] = double(tau[n]);
    return f;
}

/// q^{sum l r/24} prod_n prod_{(l,r)} (1-q^{ln})^r for positive exponents r.
/// The leading exponent must come out a positive integer.
inline QExpansion eta_product_qexp(const std::vector<std::pair<long long, int>>& factors,
                                   long long M, double y_min = 0.05) {
    long long e24 = 0, wt2 = 0;
    for (auto [l, r] : factors) {
        if (l < 1 || r < 1) throw std::invalid_argument("eta_product_qexp: levels and exponents must be positive");
        e24 += l * r;
        wt2 += r;
    }
    if (e24 % 24 != 0) throw std::invalid_argument("eta_product_qexp: non-integral leading exponent");
    if (wt2 % 2 != 0) throw std::invalid_argument("eta_product_qexp: odd total eta exponent");
    const long long shift = e24 / 24;
    if (shift < 1) throw std::invalid_argument("eta_product_qexp: not a cusp form");
    std::vector<detail::int128> p(M + 1 - shift, 0);
    p[0] = 1;
    for (auto [l, r] : factors)
        for (long long n = l; n < (long long)p.size(); n += l) detail::mul_binomial(p, n, r);
    QExpansion f;
    f.weight = int(wt2 / 2);
    f.group_level = 1;
    for (auto [l, r] : factors) f.group_level = std::lcm(f.group_level, l);
    f.label = "eta";
    for (auto [l, r] : factors) f.label += "_" + std::to_string(l) + "e" + std::to_string(r);
    f.y_min = y_min;
    f.coeffs.assign(M + 1, 0.0);
    for (long long n = shift; n <= M; ++n) f.coeffs[n] = (double)p[n - shift];
    return f;
}

/// The weight-2 newform on Gamma0(11): q prod (1-q^n)^2 (1-q^{11n})^2.
inline QExpansion newform11_qexp(long long M, double y_min = 0.05) {
    QExpansion f = eta_product_qexp({{1, 2}, {11, 2}}, M, y_min);
    f.label = "newform11";
    f.group_level = 11;
    return f;
}

}  // namespace phe
