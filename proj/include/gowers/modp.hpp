#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace gowers {

using cplx = std::complex<double>;
using ComplexVector = std::vector<cplx>;

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Exact e(num/den) for 0 <= num < den. Multiples of 1/4 are returned
/// without rounding and e(-x) is the exact conjugate of e(x).
cplx unit_root(std::uint64_t num, std::uint64_t den);

struct PrimeFieldOptions {
    // Inverse, primitive-root and discrete-log tables are built for p <= cap.
    std::uint64_t table_cap = std::uint64_t{1} << 20;
};

class BluesteinPlan;

/// The field Z/pZ for an odd prime p, with its character table and the
/// precomputed prime-length transform plan. Immutable and cheap to copy
/// (shares its tables).
class PrimeField {
public:
    // Character tables are p entries; keep them desk-sized.
    static constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 22;

    explicit PrimeField(std::uint64_t p, PrimeFieldOptions options = {});

    std::uint64_t p() const noexcept { return p_; }
    std::uint64_t size() const noexcept { return p_; }

    std::uint64_t reduce(std::int64_t a) const noexcept;
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept {
        const std::uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept {
        return a >= b ? a - b : a + p_ - b;
    }
    std::uint64_t neg(std::uint64_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept { return mul_mod(a, b, p_); }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const noexcept { return pow_mod(a, e, p_); }

    /// Throws std::domain_error("zero has no inverse") for a == 0 mod p.
    std::uint64_t inverse(std::uint64_t a) const;

    /// Legendre symbol (a/p) by quadratic reciprocity.
    int legendre(std::uint64_t a) const noexcept;

    /// e(a/p), read from the per-field table.
    const cplx& character(std::uint64_t a) const noexcept { return (*chars_)[a % p_]; }
    std::span<const cplx> character_table() const noexcept { return *chars_; }

    bool has_tables() const noexcept { return static_cast<bool>(tables_); }
    /// A primitive root mod p (computed on demand when tables are absent).
    std::uint64_t generator() const noexcept { return generator_; }
    /// k with g^k = a, for a != 0. Uses the table when present.
    std::uint64_t discrete_log(std::uint64_t a) const;

    const BluesteinPlan& dft_plan() const noexcept { return *plan_; }

private:
    struct Tables {
        std::vector<std::uint64_t> inverse;
        std::vector<std::uint64_t> dlog;
    };

    std::uint64_t p_;
    std::uint64_t generator_ = 0;
    std::shared_ptr<const std::vector<cplx>> chars_;
    std::shared_ptr<const Tables> tables_;
    std::shared_ptr<const BluesteinPlan> plan_;
};

// Free-function forms of the field primitives.
std::uint64_t mod_inverse(std::uint64_t a, const PrimeField& field);
int legendre_symbol(std::uint64_t a, const PrimeField& field);
cplx additive_character(std::uint64_t a, const PrimeField& field);

/// Jacobi symbol (a/n) for odd n by the binary reciprocity iteration.
int jacobi(std::uint64_t a, std::uint64_t n) noexcept;

}  // namespace gowers
