#include "gowers/trace_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gowers/dft.hpp"
#include "gowers/summation.hpp"

namespace gowers {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

FamilyDescriptor make_descriptor(FamilyKind kind, unsigned rank, std::set<std::uint64_t> singular,
                                 std::map<Place, unsigned> swan) {
    FamilyDescriptor d{std::move(kind), rank, std::move(singular), std::move(swan), 0};
    d.conductor = conductor_formula(rank, d.swan);
    return d;
}

double inv_sqrt(std::uint64_t p) { return 1.0 / std::sqrt(static_cast<double>(p)); }

}  // namespace

std::string FamilyDescriptor::label() const {
    return std::visit(overloaded{
                          [](const family::LegendrePoly& f) { return "legendre_poly(" + f.f.to_string() + ")"; },
                          [](const family::InversePhase&) { return std::string("inverse_phase"); },
                          [](const family::Kloosterman&) { return std::string("kloosterman"); },
                          [](const family::LegendreCurve&) { return std::string("legendre_curve"); },
                          [](const family::MixedASK& f) {
                              return "mixed_ask(f1=" + f.f1.to_string() + ";f2=" + f.f2.to_string() +
                                     ";chi=" + std::to_string(f.chi_index) + ")";
                          },
                          [](const family::FourierOf& f) { return "fourier(" + f.inner + ")"; },
                      },
                      kind);
}

unsigned conductor_formula(unsigned rank, const std::map<Place, unsigned>& swan) {
    unsigned c = rank;
    for (const auto& [place, s] : swan) c += std::max(1u, s);
    return c;
}

MultiplicativeCharacter::MultiplicativeCharacter(std::uint64_t index, const PrimeField& field)
    : field_(field), index_(index % (field.p() - 1)) {
    order_ = (field.p() - 1) / std::gcd(index_, field.p() - 1);
}

cplx MultiplicativeCharacter::operator()(std::uint64_t x) const {
    x %= field_.p();
    if (x == 0) return {0.0, 0.0};
    const std::uint64_t k = field_.discrete_log(x);
    return unit_root(mul_mod(index_, k, field_.p() - 1), field_.p() - 1);
}

TraceTable legendre_poly_trace(const IntPolynomial& f, const PrimeField& field) {
    if (f.degree() < 1) throw std::invalid_argument("legendre_poly_trace: f must have degree >= 1");
    const FpPolynomial fp = reduce_mod(f, field);
    if (is_unit_times_square(fp, field)) {
        throw std::invalid_argument("square-degenerate reduction: " + f.to_string() +
                                    " is a constant times a square mod " + std::to_string(field.p()));
    }
    const std::uint64_t p = field.p();
    ComplexVector values(p);
    std::set<std::uint64_t> roots;
    for (std::uint64_t x = 0; x < p; ++x) {
        const std::uint64_t fx = evaluate(fp, x, field);
        if (fx == 0) roots.insert(x);
        values[x] = static_cast<double>(field.legendre(fx));
    }
    std::map<Place, unsigned> swan;
    for (std::uint64_t r : roots) swan[Place::affine(r)] = 0;
    swan[Place::infinity()] = 0;
    return {field, std::move(values), make_descriptor(family::LegendrePoly{f}, 1, std::move(roots), std::move(swan))};
}

TraceTable inverse_phase_trace(const PrimeField& field) {
    const std::uint64_t p = field.p();
    ComplexVector values(p);
    for (std::uint64_t x = 1; x < p; ++x) values[x] = field.character(field.inverse(x));
    std::map<Place, unsigned> swan{{Place::affine(0), 1}, {Place::infinity(), 0}};
    return {field, std::move(values), make_descriptor(family::InversePhase{}, 1, {0}, std::move(swan))};
}

TraceTable kloosterman_trace(const PrimeField& field, KloostermanMethod method) {
    const std::uint64_t p = field.p();
    const double scale = inv_sqrt(p);
    ComplexVector values(p);
    values[0] = -scale;
    if (method == KloostermanMethod::direct) {
        ComplexVector terms(p - 1);
        for (std::uint64_t x = 1; x < p; ++x) {
            for (std::uint64_t y = 1; y < p; ++y) {
                terms[y - 1] = field.character(field.add(field.mul(x, y), field.inverse(y)));
            }
            values[x] = pairwise_sum(std::span<const cplx>(terms)) * scale;
        }
    } else {
        // sum_y g(y) e(xy/p) = p * g_hat(-x) with g(y) = e(inv(y)/p).
        ComplexVector g(p);
        for (std::uint64_t y = 1; y < p; ++y) g[y] = field.character(field.inverse(y));
        const ComplexVector g_hat = dft(g, field);
        const double factor = static_cast<double>(p) * scale;
        for (std::uint64_t x = 1; x < p; ++x) values[x] = g_hat[p - x] * factor;
    }
    std::map<Place, unsigned> swan{{Place::affine(0), 0}, {Place::infinity(), 1}};
    return {field, std::move(values), make_descriptor(family::Kloosterman{}, 2, {0}, std::move(swan))};
}

std::int64_t legendre_curve_frobenius(std::uint64_t x, const PrimeField& field, CurveMethod method) {
    const std::uint64_t p = field.p();
    std::int64_t acc = 0;
    for (std::uint64_t u = 0; u < p; ++u) {
        const std::uint64_t c = field.mul(field.mul(u, field.sub(u, 1)), field.sub(u, x));
        const int chi = field.legendre(c);
        if (method == CurveMethod::point_count) {
            acc += 1 + chi;  // solutions of v^2 = c
        } else {
            acc -= chi;
        }
    }
    return method == CurveMethod::point_count ? static_cast<std::int64_t>(p) - acc : acc;
}

TraceTable legendre_curve_trace(const PrimeField& field, CurveMethod method) {
    const std::uint64_t p = field.p();
    if (p < 5) throw std::invalid_argument("legendre_curve_trace: requires p >= 5");
    const double scale = inv_sqrt(p);
    ComplexVector values(p);
    values[0] = scale;
    values[1] = scale;
    for (std::uint64_t x = 2; x < p; ++x) {
        values[x] = static_cast<double>(legendre_curve_frobenius(x, field, method)) * scale;
    }
    std::map<Place, unsigned> swan{{Place::affine(0), 0}, {Place::affine(1), 0}, {Place::infinity(), 0}};
    return {field, std::move(values), make_descriptor(family::LegendreCurve{}, 2, {0, 1}, std::move(swan))};
}

TraceTable mixed_ask_trace(const RationalFunction& f1, const RationalFunction& f2, const MultiplicativeCharacter& chi,
                           const PrimeField& field) {
    const FpPolynomial num1 = reduce_mod(f1.num, field);
    const FpPolynomial den1 = reduce_mod(f1.den, field);
    const FpPolynomial num2 = reduce_mod(f2.num, field);
    const FpPolynomial den2 = reduce_mod(f2.den, field);
    if (den1.empty() || den2.empty()) {
        throw std::invalid_argument("mixed_ask_trace: denominator vanishes identically mod p");
    }
    if (num2.empty()) throw std::invalid_argument("mixed_ask_trace: f2 vanishes identically mod p");

    const std::uint64_t p = field.p();
    ComplexVector values(p);
    std::set<std::uint64_t> singular;
    std::map<Place, unsigned> swan;
    for (std::uint64_t x = 0; x < p; ++x) {
        const std::uint64_t d1 = evaluate(den1, x, field);
        const std::uint64_t d2 = evaluate(den2, x, field);
        const std::uint64_t n2 = evaluate(num2, x, field);
        if (d1 == 0 || d2 == 0 || n2 == 0) {
            singular.insert(x);
            unsigned order = 0;
            if (d1 == 0) {
                const unsigned pole = root_multiplicity(den1, x, field);
                const unsigned zero = num1.empty() ? pole : root_multiplicity(num1, x, field);
                order = pole > zero ? pole - zero : 0;
            }
            swan[Place::affine(x)] = order;
            continue;
        }
        const std::uint64_t a = field.mul(evaluate(num1, x, field), field.inverse(d1));
        const std::uint64_t b = field.mul(n2, field.inverse(d2));
        values[x] = field.character(a) * chi(b);
    }
    const int excess = degree(num1) - degree(den1);
    swan[Place::infinity()] = (!num1.empty() && excess > 0) ? static_cast<unsigned>(excess) : 0;

    family::MixedASK kind{f1, f2, chi.index()};
    return {field, std::move(values), make_descriptor(std::move(kind), 1, std::move(singular), std::move(swan))};
}

TraceTable fourier_trace(const TraceTable& t) {
    const std::uint64_t p = t.p();
    const ComplexVector hat = dft(t.values, t.field);
    // sum_x v(x) e(tx/p) = p * v_hat(-t)
    const double factor = -static_cast<double>(p) * inv_sqrt(p);
    ComplexVector out(p);
    for (std::uint64_t tau = 0; tau < p; ++tau) out[tau] = hat[tau == 0 ? 0 : p - tau] * factor;
    FamilyDescriptor d{family::FourierOf{t.descriptor.label()}, 0, {}, {}, 0};
    return {t.field, std::move(out), std::move(d)};
}

std::set<std::uint64_t> exceptional_set(const std::set<std::uint64_t>& singular, const PrimeField& field) {
    std::set<std::uint64_t> out;
    for (std::uint64_t s : singular) {
        for (std::uint64_t s2 : singular) {
            if (s != s2) out.insert(field.sub(s2 % field.p(), s % field.p()));
        }
    }
    out.erase(0);
    return out;
}

std::uint64_t conductor_bound_xi(std::uint64_t c) { return 5 * c * c; }

double pointwise_excess(const TraceTable& t) {
    double worst = 0.0;
    for (const cplx& z : t.values) worst = std::max(worst, std::abs(z));
    return worst - static_cast<double>(t.descriptor.rank);
}

}  // namespace gowers
