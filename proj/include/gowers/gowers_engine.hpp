#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include "gowers/modp.hpp"

namespace gowers {

enum class Engine { oracle, recursive, accelerated };

std::string to_string(Engine e);
/// Throws std::invalid_argument for unknown names.
Engine parse_engine(std::string_view name);

/// Raised when a request would exceed a configured cost limit.
class WorkCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EngineLimits {
    // Oracle refuses when p^(d+1) exceeds this many elementary terms.
    double oracle_work_cap = 1e9;
    // Accelerated engine refuses d > 4 at p > 256 unless set.
    bool allow_large_accelerated = false;
    // Worker threads for the top-level h loop; 0 = hardware concurrency.
    unsigned threads = 0;
};

/// Tolerance for cross-engine agreement at (p, d): 1e-9 while p <= 1009,
/// d <= 3 and the p^d accumulated terms stay within 1e6; 1e-8 beyond.
double engine_tolerance(std::uint64_t p, unsigned d);

/// x -> phi(x + h) * conj(phi(x)), indices mod p.
ComplexVector xi(std::span<const cplx> phi, std::uint64_t h);

/// |mean(phi)|^2
double u1(std::span<const cplx> phi);

/// Full cube average over (x, h_1..h_d). Throws WorkCapExceeded beyond the cap.
double gowers_oracle(std::span<const cplx> phi, unsigned d, const EngineLimits& limits = {});

/// U_d by the h-averaging recursion down to u1. O(p^d).
double gowers_recursive(std::span<const cplx> phi, unsigned d, const EngineLimits& limits = {});

/// sum_t |phi_hat(t)|^4.
double u2_accelerated(std::span<const cplx> phi, const PrimeField& field);

/// The recursion with its d = 2 base replaced by u2_accelerated. d >= 2.
double gowers_accelerated(std::span<const cplx> phi, unsigned d, const PrimeField& field,
                          const EngineLimits& limits = {});

/// The norm U_d^(1/2^d) from the cheapest engine that applies.
double gowers_norm(std::span<const cplx> phi, unsigned d, const PrimeField& field, const EngineLimits& limits = {});

struct NormRequest {
    std::span<const cplx> values;
    unsigned d = 2;
    Engine engine = Engine::accelerated;
    // Declared rank for the trivial-bound check; 0 skips it.
    unsigned rank = 0;
    EngineLimits limits{};
};

struct NormResult {
    std::uint64_t p = 0;
    unsigned d = 0;
    Engine engine = Engine::accelerated;
    double u_d = 0.0;
    double norm = 0.0;
    double u_d_times_p = 0.0;
    std::chrono::duration<double, std::milli> elapsed{};
};

/// Runs the requested engine (d = 1 is always u1), clamps values in
/// [-1e-9, 0) to 0, and rejects results violating nonnegativity or the
/// rank^(2^d) bound.
NormResult compute_norm(const NormRequest& request, const PrimeField& field);

}  // namespace gowers
