#include "gowers/polynomial.hpp"

#include <cctype>
#include <stdexcept>

namespace gowers {

namespace {

void trim(std::vector<std::int64_t>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

void trim(FpPolynomial& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

std::string strip_spaces(std::string_view text) {
    std::string out;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
    }
    return out;
}

// Removes one layer of parentheses enclosing the whole string.
std::string strip_outer_parens(std::string s) {
    while (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
        int depth = 0;
        bool encloses = true;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '(') ++depth;
            if (s[i] == ')') --depth;
            if (depth == 0 && i + 1 < s.size()) {
                encloses = false;
                break;
            }
        }
        if (!encloses) break;
        s = s.substr(1, s.size() - 2);
    }
    return s;
}

[[noreturn]] void parse_error(std::string_view text, std::string_view why) {
    throw std::invalid_argument("cannot parse polynomial '" + std::string(text) + "': " + std::string(why));
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<std::int64_t> c) : coeffs(std::move(c)) { trim(coeffs); }

IntPolynomial IntPolynomial::monomial(std::int64_t coeff, unsigned degree) {
    std::vector<std::int64_t> c(degree + 1, 0);
    c[degree] = coeff;
    return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::parse(std::string_view text) {
    const std::string s = strip_outer_parens(strip_spaces(text));
    if (s.empty()) parse_error(text, "empty expression");
    std::vector<std::int64_t> coeffs;
    std::size_t i = 0;
    while (i < s.size()) {
        std::int64_t sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            if (s[i] == '-') sign = -1;
            ++i;
        } else if (i != 0) {
            parse_error(text, "expected '+' or '-'");
        }
        if (i >= s.size()) parse_error(text, "dangling sign");

        std::int64_t coeff = 1;
        bool have_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(s[i]))) {
            std::size_t used = 0;
            coeff = std::stoll(s.substr(i), &used);
            i += used;
            have_coeff = true;
            if (i < s.size() && s[i] == '*') ++i;
        }
        unsigned power = 0;
        if (i < s.size() && (s[i] == 'x' || s[i] == 'X')) {
            ++i;
            power = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) {
                    parse_error(text, "expected exponent after '^'");
                }
                std::size_t used = 0;
                power = static_cast<unsigned>(std::stoul(s.substr(i), &used));
                i += used;
            }
        } else if (!have_coeff) {
            parse_error(text, "expected a coefficient or X");
        }
        if (coeffs.size() <= power) coeffs.resize(power + 1, 0);
        coeffs[power] += sign * coeff;
    }
    return IntPolynomial(std::move(coeffs));
}

std::string IntPolynomial::to_string() const {
    if (coeffs.empty()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
        const std::int64_t c = coeffs[static_cast<std::size_t>(k)];
        if (c == 0) continue;
        const std::int64_t mag = c < 0 ? -c : c;
        if (c < 0) {
            out += "-";
        } else if (!out.empty()) {
            out += "+";
        }
        if (mag != 1 || k == 0) out += std::to_string(mag);
        if (k >= 1) out += "X";
        if (k >= 2) out += "^" + std::to_string(k);
    }
    return out;
}

RationalFunction RationalFunction::parse(std::string_view text) {
    const std::string s = strip_outer_parens(strip_spaces(text));
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')') --depth;
        if (s[i] == '/' && depth == 0) {
            RationalFunction r{IntPolynomial::parse(s.substr(0, i)), IntPolynomial::parse(s.substr(i + 1))};
            if (r.den.is_zero()) throw std::invalid_argument("rational function '" + s + "' has zero denominator");
            return r;
        }
    }
    return RationalFunction{IntPolynomial::parse(s)};
}

std::string RationalFunction::to_string() const {
    if (den == IntPolynomial(std::vector<std::int64_t>{1})) return num.to_string();
    return "(" + num.to_string() + ")/(" + den.to_string() + ")";
}

FpPolynomial reduce_mod(const IntPolynomial& f, const PrimeField& field) {
    FpPolynomial out(f.coeffs.size());
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) out[i] = field.reduce(f.coeffs[i]);
    trim(out);
    return out;
}

int degree(const FpPolynomial& f) noexcept { return static_cast<int>(f.size()) - 1; }

std::uint64_t evaluate(const FpPolynomial& f, std::uint64_t x, const PrimeField& field) noexcept {
    std::uint64_t acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = field.add(field.mul(acc, x), *it);
    return acc;
}

FpPolynomial multiply(const FpPolynomial& a, const FpPolynomial& b, const PrimeField& field) {
    if (a.empty() || b.empty()) return {};
    FpPolynomial out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = field.add(out[i + j], field.mul(a[i], b[j]));
    }
    trim(out);
    return out;
}

unsigned root_multiplicity(const FpPolynomial& f, std::uint64_t x0, const PrimeField& field) {
    if (f.empty()) throw std::invalid_argument("root_multiplicity: zero polynomial");
    FpPolynomial cur = f;
    unsigned mult = 0;
    while (cur.size() > 1) {
        // Synthetic division by (X - x0).
        FpPolynomial quotient(cur.size() - 1);
        std::uint64_t carry = 0;
        for (std::size_t k = cur.size(); k-- > 0;) {
            const std::uint64_t value = field.add(cur[k], field.mul(carry, x0));
            if (k == 0) {
                if (value != 0) return mult;
            } else {
                quotient[k - 1] = value;
            }
            carry = value;
        }
        ++mult;
        cur = std::move(quotient);
    }
    return mult;
}

bool is_unit_times_square(const FpPolynomial& f, const PrimeField& field) {
    const int n = degree(f);
    if (n <= 0) return true;
    if (n % 2 != 0) return false;
    const std::uint64_t lead_inv = field.inverse(f.back());
    FpPolynomial monic(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) monic[i] = field.mul(f[i], lead_inv);

    // Monic square-root candidate g of degree k, determined top-down by the
    // top k coefficients of monic.
    const auto k = static_cast<std::size_t>(n / 2);
    FpPolynomial g(k + 1, 0);
    g[k] = 1;
    const std::uint64_t half = field.inverse(2);
    for (std::size_t j = 1; j <= k; ++j) {
        std::uint64_t rest = 0;
        for (std::size_t a = 1; a < j; ++a) rest = field.add(rest, field.mul(g[k - a], g[k - j + a]));
        g[k - j] = field.mul(field.sub(monic[2 * k - j], rest), half);
    }
    return multiply(g, g, field) == monic;
}

}  // namespace gowers
