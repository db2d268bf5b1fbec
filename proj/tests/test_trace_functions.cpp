#include <doctest.h>

#include <cmath>
#include <random>

#include "gowers/gowers_engine.hpp"
#include "gowers/trace_functions.hpp"
#include "oracles.hpp"

using namespace gowers;

namespace {

double max_imag(const ComplexVector& v) {
    double m = 0;
    for (const auto& z : v) m = std::max(m, std::abs(z.imag()));
    return m;
}

cplx total(const ComplexVector& v) {
    cplx s = 0;
    for (const auto& z : v) s += z;
    return s;
}

}  // namespace

TEST_CASE("legendre_poly_trace examples") {
    const PrimeField f7(7);
    const TraceTable t = legendre_poly_trace(IntPolynomial::parse("X"), f7);
    const std::vector<double> expected{0, 1, 1, -1, 1, -1, -1};
    for (std::uint64_t x = 0; x < 7; ++x) {
        CHECK(t.values[x] == cplx(oracle::euler_legendre(x, 7), 0.0));
        CHECK(t.values[x].real() == expected[x]);
    }
    CHECK(t.descriptor.rank == 1);
    CHECK(t.descriptor.singular_set == std::set<std::uint64_t>{0});
    CHECK(t.descriptor.conductor == 3);

    // sum_x (x/p) = 0, so the mean vanishes
    for (std::uint64_t p : {7u, 101u, 997u}) {
        const PrimeField f(p);
        const auto v = legendre_poly_trace(IntPolynomial::parse("X"), f).values;
        CHECK(std::abs(total(v) / static_cast<double>(p)) < 1e-12);
    }

    CHECK_THROWS_WITH_AS(legendre_poly_trace(IntPolynomial::parse("X^2"), f7),
                         doctest::Contains("square-degenerate reduction"), std::invalid_argument);
    CHECK_THROWS_AS(legendre_poly_trace(IntPolynomial::parse("4X^2+4X+1"), PrimeField(101)), std::invalid_argument);
    CHECK_THROWS_AS(legendre_poly_trace(IntPolynomial::parse("3"), f7), std::invalid_argument);
}

TEST_CASE("legendre_poly_trace descriptor for X^3+X+1") {
    for (std::uint64_t p : {101u, 211u, 499u, 997u}) {
        const PrimeField f(p);
        const TraceTable t = legendre_poly_trace(IntPolynomial::parse("X^3+X+1"), f);
        std::set<std::uint64_t> roots;
        for (std::uint64_t x = 0; x < p; ++x) {
            if ((x * x % p * x + x + 1) % p == 0) roots.insert(x);
        }
        CHECK(t.descriptor.singular_set == roots);
        CHECK(t.descriptor.conductor == 2 + roots.size());
        CHECK(t.descriptor.conductor <= 5);
        for (auto r : roots) CHECK(t.values[r] == cplx(0, 0));
    }
}

TEST_CASE("inverse_phase_trace") {
    for (std::uint64_t p : {5u, 101u, 499u}) {
        const PrimeField f(p);
        const TraceTable t = inverse_phase_trace(f);
        CHECK(t.values[0] == cplx(0, 0));
        CHECK(t.values[1] == f.character(1));
        for (std::uint64_t x = 1; x < p; ++x) CHECK(std::abs(std::abs(t.values[x]) - 1.0) < 1e-15);
        CHECK(std::abs(total(t.values) - cplx(-1.0, 0.0)) < 1e-10);
        CHECK(t.descriptor.conductor == 3);
        CHECK(t.descriptor.swan.at(Place::affine(0)) == 1);
        CHECK(t.descriptor.swan.at(Place::infinity()) == 0);
    }
}

TEST_CASE("kloosterman_trace examples") {
    const PrimeField f5(5);
    const TraceTable t5 = kloosterman_trace(f5, KloostermanMethod::direct);
    const double s11 = (oracle::kloosterman_sum(1, 1, 5)).real();
    CHECK(s11 == doctest::Approx(2 + 2 * std::cos(4 * std::numbers::pi / 5)).epsilon(1e-12));
    CHECK(s11 == doctest::Approx(0.381966).epsilon(1e-6));
    CHECK(std::abs(t5.values[1] - s11 / std::sqrt(5.0)) < 1e-12);

    for (std::uint64_t p : {101u, 499u}) {
        const PrimeField f(p);
        const TraceTable t = kloosterman_trace(f, KloostermanMethod::transform);
        CHECK(t.values[0] == cplx(-1.0 / std::sqrt(static_cast<double>(p)), 0.0));
        CHECK(std::abs(total(t.values)) < 1e-9);
        CHECK(t.descriptor.rank == 2);
        CHECK(t.descriptor.conductor == 4);
        // compare a handful of points with the definition
        for (std::uint64_t x : {std::uint64_t{1}, std::uint64_t{2}, p / 2, p - 1}) {
            CHECK(std::abs(t.values[x] - oracle::kloosterman_sum(x, 1, p) / std::sqrt(static_cast<double>(p))) < 1e-9);
        }
    }
}

TEST_CASE("kloosterman properties: real, Weil bound, method agreement") {
    for (std::uint64_t p : {101u, 499u, 997u}) {
        const PrimeField f(p);
        const TraceTable t = kloosterman_trace(f);
        CHECK(max_imag(t.values) <= 1e-9);
        for (std::uint64_t x = 1; x < p; ++x) CHECK(std::abs(t.values[x]) <= 2.0 + 1e-9);
    }
    const PrimeField f(499);
    const auto direct = kloosterman_trace(f, KloostermanMethod::direct).values;
    const auto fast = kloosterman_trace(f, KloostermanMethod::transform).values;
    CHECK(oracle::max_abs_diff(direct, fast) <= 1e-8);
}

TEST_CASE("legendre_curve_trace") {
    const PrimeField f(101);
    const double s = 1.0 / std::sqrt(101.0);
    const TraceTable a = legendre_curve_trace(f, CurveMethod::point_count);
    const TraceTable b = legendre_curve_trace(f, CurveMethod::char_sum);
    CHECK(a.values[0] == cplx(s, 0));
    CHECK(a.values[1] == cplx(s, 0));
    for (std::uint64_t x = 2; x < 101; ++x) {
        const auto pc = legendre_curve_frobenius(x, f, CurveMethod::point_count);
        const auto cs = legendre_curve_frobenius(x, f, CurveMethod::char_sum);
        CHECK(pc == cs);
        CHECK(pc == 101 - oracle::curve_points(x, 101));
        CHECK(a.values[x] == b.values[x]);
        CHECK(std::abs(a.values[x]) <= 2.0);
    }
    CHECK(a.descriptor.conductor == 5);
    CHECK(a.descriptor.singular_set == std::set<std::uint64_t>{0, 1});
    CHECK_THROWS_AS(legendre_curve_trace(PrimeField(3)), std::invalid_argument);
}

TEST_CASE("mixed_ask_trace reproduces the named families") {
    for (std::uint64_t p : {7u, 101u}) {
        const PrimeField f(p);
        const auto zero = RationalFunction::parse("0");
        const auto one = RationalFunction::parse("1");
        const auto x = RationalFunction::parse("X");

        const TraceTable leg = mixed_ask_trace(zero, x, MultiplicativeCharacter::quadratic(f), f);
        const TraceTable leg_ref = legendre_poly_trace(IntPolynomial::parse("X"), f);
        CHECK(oracle::max_abs_diff(leg.values, leg_ref.values) < 1e-15);
        CHECK(leg.descriptor.conductor == leg_ref.descriptor.conductor);

        const TraceTable inv = mixed_ask_trace(RationalFunction::parse("1/X"), one, MultiplicativeCharacter(0, f), f);
        const TraceTable inv_ref = inverse_phase_trace(f);
        CHECK(oracle::max_abs_diff(inv.values, inv_ref.values) == 0.0);
        CHECK(inv.descriptor.conductor == 3);
        CHECK(inv.descriptor.swan.at(Place::affine(0)) == 1);
    }
}

TEST_CASE("mixed_ask_trace metadata and errors") {
    const PrimeField f(101);
    const auto one = RationalFunction::parse("1");
    // e(P(x)/p): conductor 1 + deg P
    const TraceTable cubic = mixed_ask_trace(RationalFunction::parse("X^3"), one, MultiplicativeCharacter(0, f), f);
    CHECK(cubic.descriptor.conductor == 4);
    CHECK(cubic.descriptor.singular_set.empty());
    CHECK(cubic.descriptor.swan.at(Place::infinity()) == 3);

    // double pole at 1
    const TraceTable pole = mixed_ask_trace(RationalFunction::parse("1/(X^2-2X+1)"), one, MultiplicativeCharacter(0, f), f);
    CHECK(pole.descriptor.swan.at(Place::affine(1)) == 2);
    CHECK(pole.values[1] == cplx(0, 0));
    CHECK(pole.descriptor.conductor == 1 + 2 + 1);

    CHECK_THROWS_AS(mixed_ask_trace(one, RationalFunction::parse("0"), MultiplicativeCharacter(0, f), f),
                    std::invalid_argument);
    CHECK_THROWS_AS(mixed_ask_trace(RationalFunction::parse("1/(101X)"), one, MultiplicativeCharacter(0, f), f),
                    std::invalid_argument);
}

TEST_CASE("multiplicative character") {
    const PrimeField f(31);
    const MultiplicativeCharacter chi(6, f);
    CHECK(chi.order() == 5);
    CHECK(chi(0) == cplx(0, 0));
    for (std::uint64_t x = 1; x < 31; ++x) {
        for (std::uint64_t y = 1; y < 31; ++y) CHECK(std::abs(chi(x * y % 31) - chi(x) * chi(y)) < 1e-12);
    }
    const auto quad = MultiplicativeCharacter::quadratic(f);
    for (std::uint64_t x = 0; x < 31; ++x) CHECK(quad(x) == cplx(oracle::euler_legendre(x, 31), 0.0));
}

TEST_CASE("fourier_trace") {
    for (std::uint64_t p : {11u, 101u}) {
        const PrimeField f(p);
        TraceTable constant{f, ComplexVector(p, cplx(1, 0)), {}};
        const TraceTable ft = fourier_trace(constant);
        CHECK(std::abs(ft.values[0] + std::sqrt(static_cast<double>(p))) < 1e-10);
        for (std::uint64_t t = 1; t < p; ++t) CHECK(std::abs(ft.values[t]) < 1e-10);
        CHECK(ft.descriptor.conductor == 0);
        CHECK(std::holds_alternative<family::FourierOf>(ft.descriptor.kind));
    }
    for (std::uint64_t p : {101u, 499u}) {
        const PrimeField f(p);
        const TraceTable ft2 = fourier_trace(inverse_phase_trace(f));
        const TraceTable kl = kloosterman_trace(f, KloostermanMethod::direct);
        for (std::uint64_t t = 0; t < p; ++t) CHECK(std::abs(ft2.values[t] + kl.values[t]) <= 1e-9);
        CHECK(ft2.descriptor.label() == "fourier(inverse_phase)");
    }
    // transforming twice reflects x -> -x
    std::mt19937_64 gen(5);
    const PrimeField f(101);
    TraceTable v{f, oracle::random_gaussian(101, gen), {}};
    const TraceTable twice = fourier_trace(fourier_trace(v));
    for (std::uint64_t x = 0; x < 101; ++x) CHECK(std::abs(twice.values[x] - v.values[(101 - x) % 101]) < 1e-9);
}

TEST_CASE("exceptional_set") {
    const PrimeField f7(7);
    CHECK(exceptional_set({}, f7).empty());
    CHECK(exceptional_set({0, 1}, f7) == std::set<std::uint64_t>{1, 6});
    CHECK(exceptional_set({3}, f7).empty());

    const PrimeField f(101);
    std::mt19937_64 gen(11);
    std::uniform_int_distribution<std::uint64_t> elem(0, 100);
    for (int trial = 0; trial < 50; ++trial) {
        std::set<std::uint64_t> s;
        const int size = 1 + trial % 8;
        while (static_cast<int>(s.size()) < size) s.insert(elem(gen));
        const auto e = exceptional_set(s, f);
        CHECK(e.size() <= s.size() * (s.size() - 1));
        CHECK(e.count(0) == 0);
        // definition: h in E iff S and S - h intersect
        for (std::uint64_t h = 1; h < 101; ++h) {
            bool meets = false;
            for (auto a : s) meets = meets || s.count((a + 101 - h) % 101) > 0;
            CHECK(meets == (e.count(h) > 0));
        }
    }
}

TEST_CASE("conductor arithmetic") {
    CHECK(conductor_bound_xi(3) == 45);
    CHECK(conductor_bound_xi(1) == 5);
    CHECK(conductor_bound_xi(4) == 80);
    CHECK(conductor_formula(2, {{Place::affine(0), 0}, {Place::infinity(), 1}}) == 4);
    CHECK(conductor_formula(1, {{Place::affine(0), 3}, {Place::infinity(), 0}}) == 5);
}

TEST_CASE("pointwise bound and descriptor conductor formula for every family") {
    for (std::uint64_t p : {101u, 211u}) {
        const PrimeField f(p);
        const std::vector<TraceTable> tables{
            legendre_poly_trace(IntPolynomial::parse("X^3+X+1"), f), inverse_phase_trace(f), kloosterman_trace(f),
            legendre_curve_trace(f),
            mixed_ask_trace(RationalFunction::parse("X^2/(X-3)"), RationalFunction::parse("X+1"),
                            MultiplicativeCharacter(5, f), f)};
        for (const auto& t : tables) {
            CHECK(pointwise_excess(t) <= 1e-12);
            CHECK(t.descriptor.conductor == conductor_formula(t.descriptor.rank, t.descriptor.swan));
            std::set<std::uint64_t> affine;
            for (const auto& [place, s] : t.descriptor.swan) {
                if (!place.at_infinity) affine.insert(place.x);
            }
            CHECK(affine == t.descriptor.singular_set);
        }
    }
}
