#include <doctest.h>

#include <functional>
#include <random>

#include "gowers/polynomial.hpp"

using namespace gowers;

TEST_CASE("IntPolynomial parse and print") {
    CHECK(IntPolynomial::parse("X^3+X+1").coeffs == std::vector<std::int64_t>{1, 1, 0, 1});
    CHECK(IntPolynomial::parse(" -2x^2 + 3 ").coeffs == std::vector<std::int64_t>{3, 0, -2});
    CHECK(IntPolynomial::parse("(x-1)").coeffs == std::vector<std::int64_t>{-1, 1});
    CHECK(IntPolynomial::parse("5*X").coeffs == std::vector<std::int64_t>{0, 5});
    CHECK(IntPolynomial::parse("X^2-X^2").is_zero());
    CHECK(IntPolynomial::parse("X^3+X+1").to_string() == "X^3+X+1");
    CHECK(IntPolynomial::parse("-X^2+3X-7").to_string() == "-X^2+3X-7");
    CHECK(IntPolynomial{}.to_string() == "0");

    CHECK_THROWS_AS(IntPolynomial::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(IntPolynomial::parse("X^"), std::invalid_argument);
    CHECK_THROWS_AS(IntPolynomial::parse("X X"), std::invalid_argument);
    CHECK_THROWS_AS(IntPolynomial::parse("y"), std::invalid_argument);
}

TEST_CASE("RationalFunction parse") {
    const auto r = RationalFunction::parse("1/X");
    CHECK(r.num.coeffs == std::vector<std::int64_t>{1});
    CHECK(r.den.coeffs == std::vector<std::int64_t>{0, 1});
    CHECK(r.to_string() == "(1)/(X)");
    const auto q = RationalFunction::parse("(X^2+1)/(X-1)");
    CHECK(q.num.degree() == 2);
    CHECK(q.den.coeffs == std::vector<std::int64_t>{-1, 1});
    CHECK(RationalFunction::parse("X^3").to_string() == "X^3");
    CHECK_THROWS_AS(RationalFunction::parse("1/0"), std::invalid_argument);
}

TEST_CASE("evaluation and root multiplicity over F_p") {
    const PrimeField f(13);
    const FpPolynomial g = reduce_mod(IntPolynomial::parse("X^3-3X+2"), f);  // (X-1)^2 (X+2)
    CHECK(evaluate(g, 1, f) == 0);
    CHECK(evaluate(g, 11, f) == 0);
    CHECK(evaluate(g, 2, f) == 4);
    CHECK(root_multiplicity(g, 1, f) == 2);
    CHECK(root_multiplicity(g, 11, f) == 1);
    CHECK(root_multiplicity(g, 3, f) == 0);
    CHECK(reduce_mod(IntPolynomial::parse("13X^2+1"), f) == FpPolynomial{1});
}

TEST_CASE("is_unit_times_square") {
    const PrimeField f(7);
    auto sq = [&](const char* s) { return is_unit_times_square(reduce_mod(IntPolynomial::parse(s), f), f); };
    CHECK(sq("X^2"));
    CHECK(sq("3X^2"));               // 3 is a non-square unit mod 7
    CHECK(sq("X^2+2X+1"));
    CHECK(sq("5"));
    CHECK(sq("7X+7"));               // zero mod 7
    CHECK_FALSE(sq("X^3+X^2+7X"));   // X^2 (X+1)
    CHECK_FALSE(sq("X"));
    CHECK_FALSE(sq("X^3+X+1"));
    CHECK_FALSE(sq("X^2+1"));
    CHECK_FALSE(sq("X^4+X^2"));      // X^2 (X^2+1)
    CHECK(sq("X^4+2X^2+1"));         // (X^2+1)^2
    CHECK(sq("14X^5+X^4"));          // reduces to X^4
}

TEST_CASE("is_unit_times_square agrees with squaring random polynomials") {
    const PrimeField f(11);
    std::mt19937_64 gen(3);
    std::uniform_int_distribution<std::uint64_t> coef(0, 10);
    for (int trial = 0; trial < 200; ++trial) {
        FpPolynomial g(1 + trial % 4);
        for (auto& c : g) c = coef(gen);
        g.back() = 1 + coef(gen) % 10;
        const std::uint64_t c = 1 + coef(gen) % 10;
        FpPolynomial h = multiply(g, g, f);
        for (auto& v : h) v = f.mul(v, c);
        CHECK(is_unit_times_square(h, f));
        if (g.size() > 1) {
            FpPolynomial bumped = h;
            bumped[0] = f.add(bumped[0], 1);
            // squareness of the perturbed polynomial decided by exhaustive search
            bool brute = false;
            const std::size_t k = (bumped.size() - 1) / 2;
            if ((bumped.size() - 1) % 2 == 0) {
                FpPolynomial cand(k + 1, 0);
                std::function<void(std::size_t)> search = [&](std::size_t i) {
                    if (brute) return;
                    if (i == k) {
                        cand[k] = 1;
                        FpPolynomial s = multiply(cand, cand, f);
                        for (auto& v : s) v = f.mul(v, bumped.back());
                        if (s == bumped) brute = true;
                        return;
                    }
                    for (std::uint64_t v = 0; v < 11; ++v) {
                        cand[i] = v;
                        search(i + 1);
                    }
                };
                search(0);
            }
            CHECK(is_unit_times_square(bumped, f) == brute);
        }
    }
}
