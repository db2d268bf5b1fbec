#pragma once

// Test-only reference computations. Everything here is deliberately naive
// and shares no code path with the library beyond std::complex.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

/// Euler's criterion, for p < 2^32.
inline int euler_legendre(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) return 0;
    return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

inline std::uint64_t brute_inverse(std::uint64_t a, std::uint64_t p) {
    for (std::uint64_t b = 1; b < p; ++b) {
        if (a * b % p == 1) return b;
    }
    return 0;
}

inline cplx e(double t) { return std::polar(1.0, 2.0 * std::numbers::pi * t); }

/// S(a, b; p) by its definition.
inline cplx kloosterman_sum(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    cplx s = 0;
    for (std::uint64_t y = 1; y < p; ++y) {
        const std::uint64_t arg = (a * y + b * brute_inverse(y, p)) % p;
        s += e(static_cast<double>(arg) / static_cast<double>(p));
    }
    return s;
}

/// Affine points on v^2 = u(u-1)(u-x) by enumerating squares.
inline std::int64_t curve_points(std::uint64_t x, std::uint64_t p) {
    std::vector<int> roots(p, 0);
    for (std::uint64_t v = 0; v < p; ++v) roots[v * v % p] += 1;
    std::int64_t n = 0;
    for (std::uint64_t u = 0; u < p; ++u) {
        const std::uint64_t c = u * ((u + p - 1) % p) % p * ((u + p - x % p) % p) % p;
        n += roots[c];
    }
    return n;
}

/// Direct O(p^2) DFT with cos/sin evaluated per term.
inline std::vector<cplx> naive_dft(const std::vector<cplx>& v) {
    const std::size_t p = v.size();
    std::vector<cplx> out(p);
    for (std::size_t t = 0; t < p; ++t) {
        cplx s = 0;
        for (std::size_t x = 0; x < p; ++x) s += v[x] * e(-static_cast<double>(x * t % p) / static_cast<double>(p));
        out[t] = s / static_cast<double>(p);
    }
    return out;
}

/// U_d by the plain cube average with std::complex accumulation, no pairwise
/// summation. Only for tiny p^(d+1).
inline double cube_average(const std::vector<cplx>& phi, unsigned d) {
    const std::size_t p = phi.size();
    std::vector<std::size_t> h(d, 0);
    cplx total = 0;
    while (true) {
        for (std::size_t x = 0; x < p; ++x) {
            cplx prod = 1;
            for (std::size_t w = 0; w < (std::size_t{1} << d); ++w) {
                std::size_t idx = x;
                int bits = 0;
                for (unsigned i = 0; i < d; ++i) {
                    if (w >> i & 1) {
                        idx += h[i];
                        ++bits;
                    }
                }
                const cplx v = phi[idx % p];
                prod *= (bits % 2) ? std::conj(v) : v;
            }
            total += prod;
        }
        unsigned i = 0;
        while (i < d && ++h[i] == p) h[i++] = 0;
        if (i == d) break;
    }
    return total.real() / std::pow(static_cast<double>(p), static_cast<double>(d + 1));
}

inline std::vector<cplx> random_unit(std::size_t p, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::vector<cplx> v(p);
    for (auto& z : v) z = std::polar(1.0, angle(gen));
    return v;
}

inline std::vector<cplx> random_gaussian(std::size_t p, std::mt19937_64& gen) {
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<cplx> v(p);
    for (auto& z : v) z = {n(gen), n(gen)};
    return v;
}

/// e(P(x)/p) with P given low-to-high including the constant term.
inline std::vector<cplx> poly_phase(const std::vector<std::uint64_t>& coeffs, std::uint64_t p) {
    std::vector<cplx> v(p);
    for (std::uint64_t x = 0; x < p; ++x) {
        std::uint64_t acc = 0;
        for (std::size_t k = coeffs.size(); k-- > 0;) acc = (acc * x + coeffs[k]) % p;
        v[x] = e(static_cast<double>(acc) / static_cast<double>(p));
    }
    return v;
}

inline double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace oracle
