#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <variant>

#include "gowers/modp.hpp"
#include "gowers/polynomial.hpp"

namespace gowers {

/// A point of P^1(F_p): an affine x or infinity.
struct Place {
    bool at_infinity = false;
    std::uint64_t x = 0;

    static Place infinity() { return {true, 0}; }
    static Place affine(std::uint64_t x) { return {false, x}; }

    friend auto operator<=>(const Place&, const Place&) = default;
};

namespace family {
struct LegendrePoly {
    IntPolynomial f;
};
struct InversePhase {};
struct Kloosterman {};
struct LegendreCurve {};
struct MixedASK {
    RationalFunction f1;
    RationalFunction f2;
    std::uint64_t chi_index = 0;
};
struct FourierOf {
    std::string inner;
};
}  // namespace family

using FamilyKind = std::variant<family::LegendrePoly, family::InversePhase, family::Kloosterman,
                                family::LegendreCurve, family::MixedASK, family::FourierOf>;

/// Declared sheaf metadata for a trace-function family. Conductor and rank 0
/// mean "untracked" (Fourier transforms).
struct FamilyDescriptor {
    FamilyKind kind;
    unsigned rank = 1;
    std::set<std::uint64_t> singular_set;
    std::map<Place, unsigned> swan;  // singular places including infinity
    unsigned conductor = 0;

    std::string label() const;
    bool conductor_tracked() const noexcept { return conductor != 0; }
};

/// rank + sum over places of max(1, swan).
unsigned conductor_formula(unsigned rank, const std::map<Place, unsigned>& swan);

/// The length-p value table of a trace function with its metadata.
struct TraceTable {
    PrimeField field;
    ComplexVector values;
    FamilyDescriptor descriptor;

    std::uint64_t p() const noexcept { return field.p(); }
};

/// chi(g^k) = e(index * k / (p - 1)), chi(0) = 0.
class MultiplicativeCharacter {
public:
    MultiplicativeCharacter(std::uint64_t index, const PrimeField& field);

    static MultiplicativeCharacter quadratic(const PrimeField& field) {
        return MultiplicativeCharacter((field.p() - 1) / 2, field);
    }

    std::uint64_t index() const noexcept { return index_; }
    /// (p - 1) / gcd(index, p - 1)
    std::uint64_t order() const noexcept { return order_; }
    bool is_trivial() const noexcept { return index_ == 0; }

    cplx operator()(std::uint64_t x) const;

private:
    PrimeField field_;
    std::uint64_t index_;
    std::uint64_t order_;
};

enum class KloostermanMethod { direct, transform };
enum class CurveMethod { point_count, char_sum };

/// (f(x)/p). Throws std::invalid_argument("square-degenerate reduction ...")
/// when f mod p is a constant times a square.
TraceTable legendre_poly_trace(const IntPolynomial& f, const PrimeField& field);

/// e(inv(x)/p), 0 at x = 0.
TraceTable inverse_phase_trace(const PrimeField& field);

/// S(x,1;p)/sqrt(p), -1/sqrt(p) at x = 0.
TraceTable kloosterman_trace(const PrimeField& field, KloostermanMethod method = KloostermanMethod::transform);

/// Integer p - N(x) for the affine curve v^2 = u(u-1)(u-x); x not in {0,1}.
std::int64_t legendre_curve_frobenius(std::uint64_t x, const PrimeField& field, CurveMethod method);

/// (p - N(x))/sqrt(p), 1/sqrt(p) at x = 0, 1. Requires p >= 5.
TraceTable legendre_curve_trace(const PrimeField& field, CurveMethod method = CurveMethod::char_sum);

/// e(f1(x)/p) chi(f2(x)) on the domain where both are regular and f2 != 0;
/// 0 elsewhere.
TraceTable mixed_ask_trace(const RationalFunction& f1, const RationalFunction& f2, const MultiplicativeCharacter& chi,
                           const PrimeField& field);

/// out(t) = -(1/sqrt(p)) sum_x values(x) e(t x / p).
TraceTable fourier_trace(const TraceTable& t);

/// Nonzero pairwise differences {s' - s : s, s' in S, s != s'}.
std::set<std::uint64_t> exceptional_set(const std::set<std::uint64_t>& singular, const PrimeField& field);

/// Conductor bound for xi_h(F): 5 c^2.
std::uint64_t conductor_bound_xi(std::uint64_t c);

/// Max over x of |values(x)| minus rank; <= 0 when the pointwise bound holds.
double pointwise_excess(const TraceTable& t);

}  // namespace gowers
