#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gowers/modp.hpp"

namespace gowers {

/// Polynomial with integer coefficients, lowest degree first, no trailing zeros.
struct IntPolynomial {
    std::vector<std::int64_t> coeffs;

    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<std::int64_t> c);

    static IntPolynomial monomial(std::int64_t coeff, unsigned degree);

    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
    bool is_zero() const noexcept { return coeffs.empty(); }

    /// Parses expressions such as "X^3+X+1", "-2x^2 + 3", "(x-1)". Throws
    /// std::invalid_argument on malformed input.
    static IntPolynomial parse(std::string_view text);
    std::string to_string() const;

    friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;
};

/// num/den with integer polynomial parts; evaluated over F_p away from poles.
struct RationalFunction {
    IntPolynomial num;
    IntPolynomial den{std::vector<std::int64_t>{1}};

    /// "1/X", "X^3", "(X^2+1)/(X-1)".
    static RationalFunction parse(std::string_view text);
    std::string to_string() const;
};

/// Polynomial over F_p, lowest degree first, trimmed.
using FpPolynomial = std::vector<std::uint64_t>;

FpPolynomial reduce_mod(const IntPolynomial& f, const PrimeField& field);
int degree(const FpPolynomial& f) noexcept;
std::uint64_t evaluate(const FpPolynomial& f, std::uint64_t x, const PrimeField& field) noexcept;
FpPolynomial multiply(const FpPolynomial& a, const FpPolynomial& b, const PrimeField& field);

/// Multiplicity of x0 as a root of f (0 if f(x0) != 0). f must be nonzero.
unsigned root_multiplicity(const FpPolynomial& f, std::uint64_t x0, const PrimeField& field);

/// True when f = c * g^2 in F_p[X] for some constant c (including f == 0
/// and nonzero constants).
bool is_unit_times_square(const FpPolynomial& f, const PrimeField& field);

}  // namespace gowers
