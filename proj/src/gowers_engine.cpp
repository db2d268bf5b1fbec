#include "gowers/gowers_engine.hpp"

#include <bit>
#include <cmath>
#include <vector>

#include "gowers/dft.hpp"
#include "gowers/parallel.hpp"
#include "gowers/summation.hpp"

namespace gowers {

namespace {

constexpr double kImagTolerance = 1e-9;
constexpr double kNegativeTolerance = 1e-9;
constexpr double kTrivialBoundSlack = 1e-6;

double checked_real(cplx z, const char* who) {
    if (std::abs(z.imag()) > kImagTolerance) {
        throw std::runtime_error(std::string(who) + ": imaginary part " + std::to_string(z.imag()) +
                                 " exceeds tolerance");
    }
    return z.real();
}

double average(std::vector<double>& per_h) {
    return pairwise_sum(std::span<const double>(per_h)) / static_cast<double>(per_h.size());
}

// Averages level(xi_h(phi)) over h; only this outermost loop is parallel.
template <typename Level>
double average_over_shifts(std::span<const cplx> phi, const Level& level, unsigned threads) {
    std::vector<double> per_h(phi.size());
    parallel_for(phi.size(), [&](std::size_t h) { per_h[h] = level(xi(phi, h)); }, threads);
    return average(per_h);
}

double recursive_serial(std::span<const cplx> phi, unsigned d) {
    if (d == 1) return u1(phi);
    std::vector<double> per_h(phi.size());
    for (std::size_t h = 0; h < phi.size(); ++h) per_h[h] = recursive_serial(xi(phi, h), d - 1);
    return average(per_h);
}

double accelerated_serial(std::span<const cplx> phi, unsigned d, const PrimeField& field) {
    if (d == 2) return u2_accelerated(phi, field);
    std::vector<double> per_h(phi.size());
    for (std::size_t h = 0; h < phi.size(); ++h) per_h[h] = accelerated_serial(xi(phi, h), d - 1, field);
    return average(per_h);
}

// Sum over the cube for fixed offsets, nested pairwise over h levels.
class CubeSum {
public:
    CubeSum(std::span<const cplx> phi, unsigned d) : phi_(phi), d_(d), p_(phi.size()) {
        offsets_.assign(std::size_t{1} << d, 0);
        scratch_.assign(d + 1, std::vector<cplx>(p_));
    }

    cplx run() { return level(0); }

private:
    cplx level(unsigned j) {
        std::vector<cplx>& buf = scratch_[j];
        if (j == d_) {
            for (std::size_t x = 0; x < p_; ++x) {
                cplx prod{1.0, 0.0};
                for (std::size_t w = 0; w < offsets_.size(); ++w) {
                    const cplx v = phi_[(x + offsets_[w]) % p_];
                    prod *= (std::popcount(w) & 1) ? std::conj(v) : v;
                }
                buf[x] = prod;
            }
            return pairwise_sum(std::span<const cplx>(buf));
        }
        // Vertices with bit j set are shifted by h; offsets stay below d * p.
        const std::size_t bit = std::size_t{1} << j;
        for (std::size_t h = 0; h < p_; ++h) {
            for (std::size_t w = 0; w < offsets_.size(); ++w) {
                if (w & bit) offsets_[w] += h;
            }
            scratch_[j][h] = level(j + 1);
            for (std::size_t w = 0; w < offsets_.size(); ++w) {
                if (w & bit) offsets_[w] -= h;
            }
        }
        return pairwise_sum(std::span<const cplx>(scratch_[j]));
    }

    std::span<const cplx> phi_;
    unsigned d_;
    std::size_t p_;
    std::vector<std::size_t> offsets_;
    std::vector<std::vector<cplx>> scratch_;
};

}  // namespace

std::string to_string(Engine e) {
    switch (e) {
        case Engine::oracle: return "oracle";
        case Engine::recursive: return "recursive";
        case Engine::accelerated: return "accelerated";
    }
    return "unknown";
}

Engine parse_engine(std::string_view name) {
    if (name == "oracle") return Engine::oracle;
    if (name == "recursive") return Engine::recursive;
    if (name == "accelerated") return Engine::accelerated;
    throw std::invalid_argument("unknown engine '" + std::string(name) + "'");
}

double engine_tolerance(std::uint64_t p, unsigned d) {
    const double terms = std::pow(static_cast<double>(p), static_cast<double>(d));
    return (p <= 1009 && d <= 3 && terms <= 1e6) ? 1e-9 : 1e-8;
}

ComplexVector xi(std::span<const cplx> phi, std::uint64_t h) {
    const std::size_t p = phi.size();
    ComplexVector out(p);
    const std::size_t shift = static_cast<std::size_t>(h % p);
    for (std::size_t x = 0; x < p; ++x) {
        const std::size_t xh = x + shift < p ? x + shift : x + shift - p;
        out[x] = phi[xh] * std::conj(phi[x]);
    }
    return out;
}

double u1(std::span<const cplx> phi) {
    return std::norm(pairwise_sum(phi) / static_cast<double>(phi.size()));
}

double gowers_oracle(std::span<const cplx> phi, unsigned d, const EngineLimits& limits) {
    if (d == 0) throw std::invalid_argument("gowers_oracle: d must be >= 1");
    const double work = std::pow(static_cast<double>(phi.size()), static_cast<double>(d + 1));
    if (work > limits.oracle_work_cap) {
        throw WorkCapExceeded("oracle: p^(d+1) = " + std::to_string(work) + " terms exceeds the work cap of " +
                              std::to_string(limits.oracle_work_cap));
    }
    CubeSum cube(phi, d);
    return checked_real(cube.run() / work, "gowers_oracle");
}

double gowers_recursive(std::span<const cplx> phi, unsigned d, const EngineLimits& limits) {
    if (d == 0) throw std::invalid_argument("gowers_recursive: d must be >= 1");
    if (d == 1) return u1(phi);
    return average_over_shifts(
        phi, [d](const ComplexVector& v) { return recursive_serial(v, d - 1); }, limits.threads);
}

double u2_accelerated(std::span<const cplx> phi, const PrimeField& field) {
    const ComplexVector hat = dft(phi, field);
    std::vector<double> quartic(hat.size());
    for (std::size_t t = 0; t < hat.size(); ++t) {
        const double m = std::norm(hat[t]);
        quartic[t] = m * m;
    }
    return pairwise_sum(std::span<const double>(quartic));
}

double gowers_accelerated(std::span<const cplx> phi, unsigned d, const PrimeField& field,
                          const EngineLimits& limits) {
    if (d < 2) throw std::invalid_argument("gowers_accelerated: requires d >= 2 (use u1 for d = 1)");
    if (d > 4 && field.p() > 256 && !limits.allow_large_accelerated) {
        throw WorkCapExceeded("accelerated: d = " + std::to_string(d) + " at p = " + std::to_string(field.p()) +
                              " exceeds the default cap (d <= 4 for p > 256)");
    }
    if (d == 2) return u2_accelerated(phi, field);
    return average_over_shifts(
        phi, [d, &field](const ComplexVector& v) { return accelerated_serial(v, d - 1, field); }, limits.threads);
}

double gowers_norm(std::span<const cplx> phi, unsigned d, const PrimeField& field, const EngineLimits& limits) {
    double u = 0.0;
    if (d == 1) {
        u = u1(phi);
    } else if (d <= 4 || field.p() <= 256 || limits.allow_large_accelerated) {
        u = gowers_accelerated(phi, d, field, limits);
    } else {
        u = gowers_recursive(phi, d, limits);
    }
    return std::pow(std::max(u, 0.0), 1.0 / std::ldexp(1.0, static_cast<int>(d)));
}

NormResult compute_norm(const NormRequest& request, const PrimeField& field) {
    if (request.values.size() != field.p()) {
        throw std::invalid_argument("compute_norm: table length does not match p");
    }
    if (request.d == 0) throw std::invalid_argument("compute_norm: d must be >= 1");
    const auto start = std::chrono::steady_clock::now();
    double u = 0.0;
    if (request.d == 1 && request.engine != Engine::oracle) {
        u = u1(request.values);
    } else {
        switch (request.engine) {
            case Engine::oracle: u = gowers_oracle(request.values, request.d, request.limits); break;
            case Engine::recursive: u = gowers_recursive(request.values, request.d, request.limits); break;
            case Engine::accelerated: u = gowers_accelerated(request.values, request.d, field, request.limits); break;
        }
    }
    const auto stop = std::chrono::steady_clock::now();

    if (u < -kNegativeTolerance) {
        throw std::runtime_error("compute_norm: U_d = " + std::to_string(u) + " is negative beyond tolerance");
    }
    u = std::max(u, 0.0);
    if (request.rank > 0) {
        const double bound = std::pow(static_cast<double>(request.rank), std::ldexp(1.0, static_cast<int>(request.d)));
        if (u > bound + kTrivialBoundSlack) {
            throw std::logic_error("compute_norm: U_d = " + std::to_string(u) + " exceeds rank^(2^d) = " +
                                   std::to_string(bound));
        }
    }
    NormResult r;
    r.p = field.p();
    r.d = request.d;
    r.engine = request.engine;
    r.u_d = u;
    r.norm = std::pow(u, 1.0 / std::ldexp(1.0, static_cast<int>(request.d)));
    r.u_d_times_p = u * static_cast<double>(field.p());
    r.elapsed = stop - start;
    return r;
}

}  // namespace gowers
