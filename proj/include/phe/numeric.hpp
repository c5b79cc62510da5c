#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace phe {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338327950288;

/// base^e for integer e (repeated squaring; never touches branch cuts).
inline cplx ipow(cplx base, long long e) {
    if (e < 0) return 1.0 / ipow(base, -e);
    cplx acc(1.0, 0.0);
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

inline double binom(long long n, long long k) {
    if (k < 0 || k > n) return 0.0;
    if (k > n - k) k = n - k;
    double acc = 1.0;
    for (long long j = 1; j <= k; ++j) acc = acc * double(n - k + j) / double(j);
    return acc;
}

inline double factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial: negative argument");
    return std::tgamma(double(n) + 1.0);
}

/// ax + by = gcd(a,b), gcd returned nonnegative.
inline long long egcd(long long a, long long b, long long& x, long long& y) {
    if (b == 0) {
        x = (a < 0) ? -1 : 1;
        y = 0;
        return std::abs(a);
    }
    long long x1, y1;
    long long g = egcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

inline long long isqrt_ll(long long n) {
    if (n < 0) return -1;
    long long r = (long long)std::sqrt((double)n);
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool is_perfect_square(long long n) {
    if (n < 0) return false;
    long long r = isqrt_ll(n);
    return r * r == n;
}

/// Gauss-Legendre nodes/weights on [-1,1], Newton iteration on P_n.
inline const std::vector<std::pair<double, double>>& gauss_legendre(int n) {
    static std::map<int, std::vector<std::pair<double, double>>> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    std::vector<std::pair<double, double>> rule(n);
    int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0, z1;
        do {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            z1 = z;
            z = z1 - p1 / pp;
        } while (std::abs(z - z1) > 1e-15);
        double w = 2.0 / ((1.0 - z * z) * pp * pp);
        rule[i] = {-z, w};
        rule[n - 1 - i] = {z, w};
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

/// \int_a^b f(x) dx on a real interval, complex-valued f.
template <typename F>
cplx gl_integrate(F&& f, double a, double b, int order) {
    const auto& rule = gauss_legendre(order);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    cplx acc(0.0, 0.0);
    for (const auto& [x, w] : rule) acc += w * f(mid + half * x);
    return half * acc;
}

/// Complex line integral of f along the straight segment from a to b.
template <typename F>
cplx gl_segment(F&& f, cplx a, cplx b, int order) {
    const auto& rule = gauss_legendre(order);
    const cplx mid = 0.5 * (a + b), half = 0.5 * (b - a);
    cplx acc(0.0, 0.0);
    for (const auto& [x, w] : rule) acc += w * f(mid + half * x);
    return half * acc;
}

/// Principal log-gamma (Lanczos, g=7); reflection for Re z < 0.5.
inline cplx lgamma_complex(cplx z) {
    static const double g[9] = {
        0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    if (z.real() < 0.5) {
        // log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z)
        return std::log(pi / std::sin(pi * z)) - lgamma_complex(1.0 - z);
    }
    z -= 1.0;
    cplx x = g[0];
    for (int i = 1; i < 9; ++i) x += g[i] / (z + double(i));
    cplx t = z + 7.5;
    return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

inline cplx tgamma_complex(cplx z) { return std::exp(lgamma_complex(z)); }

}  // namespace phe
