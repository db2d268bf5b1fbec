#include "gowers/modp.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "gowers/dft.hpp"

namespace gowers {

__extension__ typedef unsigned __int128 u128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp != 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    // These twelve bases are a witness set for all n < 3.3e24.
    static constexpr std::array<std::uint64_t, 12> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (std::uint64_t b : kBases) {
        if (n % b == 0) return n == b;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t b : kBases) {
        std::uint64_t x = pow_mod(b, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

int jacobi(std::uint64_t a, std::uint64_t n) noexcept {
    a %= n;
    int sign = 1;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            const std::uint64_t r = n & 7;
            if (r == 3 || r == 5) sign = -sign;
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3) sign = -sign;
        a %= n;
    }
    return n == 1 ? sign : 0;
}

cplx unit_root(std::uint64_t num, std::uint64_t den) {
    const std::uint64_t g = std::gcd(num, den);
    num /= g;
    den /= g;
    num %= den;
    if (num == 0) return {1.0, 0.0};
    if (2 * num == den) return {-1.0, 0.0};
    if (4 * num == den) return {0.0, 1.0};
    if (4 * num == 3 * den) return {0.0, -1.0};
    if (2 * num > den) return std::conj(unit_root(den - num, den));
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
    return {std::cos(angle), std::sin(angle)};
}

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::uint64_t find_generator(std::uint64_t p) {
    const auto factors = prime_factors(p - 1);
    for (std::uint64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (std::uint64_t q : factors) {
            if (pow_mod(g, (p - 1) / q, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw std::logic_error("no primitive root found");
}

}  // namespace

PrimeField::PrimeField(std::uint64_t p, PrimeFieldOptions options) : p_(p) {
    if (p < 3 || !is_prime(p)) {
        throw std::invalid_argument("PrimeField: modulus " + std::to_string(p) + " is not an odd prime");
    }
    if (p > kMaxModulus) {
        throw std::invalid_argument("PrimeField: modulus " + std::to_string(p) + " exceeds the supported maximum " +
                                    std::to_string(kMaxModulus));
    }
    generator_ = find_generator(p);

    auto chars = std::make_shared<std::vector<cplx>>(p);
    for (std::uint64_t a = 0; a < p; ++a) (*chars)[a] = unit_root(a, p);
    chars_ = std::move(chars);

    if (p <= options.table_cap) {
        auto tables = std::make_shared<Tables>();
        tables->inverse.assign(p, 0);
        tables->dlog.assign(p, 0);
        std::uint64_t x = 1;
        for (std::uint64_t k = 0; k + 1 < p; ++k) {
            tables->dlog[x] = k;
            x = mul(x, generator_);
        }
        // inv(g^k) = g^(p-1-k)
        std::vector<std::uint64_t> powers(p - 1);
        x = 1;
        for (std::uint64_t k = 0; k + 1 < p; ++k) {
            powers[k] = x;
            x = mul(x, generator_);
        }
        for (std::uint64_t a = 1; a < p; ++a) {
            const std::uint64_t k = tables->dlog[a];
            tables->inverse[a] = powers[(p - 1 - k) % (p - 1)];
        }
        tables_ = std::move(tables);
    }
    plan_ = std::make_shared<const BluesteinPlan>(p);
}

std::uint64_t PrimeField::reduce(std::int64_t a) const noexcept {
    const auto m = static_cast<std::int64_t>(p_);
    std::int64_t r = a % m;
    if (r < 0) r += m;
    return static_cast<std::uint64_t>(r);
}

std::uint64_t PrimeField::inverse(std::uint64_t a) const {
    a %= p_;
    if (a == 0) throw std::domain_error("zero has no inverse");
    if (tables_) return tables_->inverse[a];
    return pow_mod(a, p_ - 2, p_);
}

int PrimeField::legendre(std::uint64_t a) const noexcept { return jacobi(a % p_, p_); }

std::uint64_t PrimeField::discrete_log(std::uint64_t a) const {
    a %= p_;
    if (a == 0) throw std::domain_error("zero has no discrete logarithm");
    if (tables_) return tables_->dlog[a];
    std::uint64_t x = 1;
    for (std::uint64_t k = 0; k + 1 < p_; ++k) {
        if (x == a) return k;
        x = mul(x, generator_);
    }
    throw std::logic_error("discrete_log: generator does not generate");
}

std::uint64_t mod_inverse(std::uint64_t a, const PrimeField& field) { return field.inverse(a); }

int legendre_symbol(std::uint64_t a, const PrimeField& field) { return field.legendre(a); }

cplx additive_character(std::uint64_t a, const PrimeField& field) { return field.character(a); }

}  // namespace gowers
