#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gowers/gowers_engine.hpp"
#include "gowers/modp.hpp"
#include "gowers/trace_functions.hpp"

namespace gowers {

/// A polynomial phase e(P(x)/p) with P(0) = 0 and its correlation with the
/// probed function. coeffs[k] is the coefficient of X^(k+1).
struct PhaseComponent {
    std::vector<std::uint64_t> coeffs;
    cplx beta;

    double magnitude() const { return std::abs(beta); }
    /// Degree of P (0 for P = 0).
    unsigned degree() const;
    std::string to_string() const;
};

struct Decomposition {
    ComplexVector t1;  // residual
    std::vector<PhaseComponent> components;
    unsigned d = 0;
    double threshold = 0.0;

    /// t2 = sum beta_i e(P_i(x)/p).
    ComplexVector structured_part(const PrimeField& field) const;
};

/// P given by coefficients of X^1, X^2, ... (zero constant term).
std::uint64_t evaluate_phase_poly(std::span<const std::uint64_t> coeffs, std::uint64_t x, const PrimeField& field);

/// (1/p) sum_x phi(x) e(-P(x)/p).
cplx phase_correlation(std::span<const cplx> phi, std::span<const std::uint64_t> coeffs, const PrimeField& field);

struct ScanLimits {
    // Refuse when p^(d-2) * p log p exceeds this.
    double work_cap = 1e9;
    unsigned threads = 0;
};

/// All phases of degree <= d-1 with |correlation| >= threshold, by magnitude
/// descending then coefficients lexicographically. d in {1, 2, 3}; larger d
/// throws WorkCapExceeded.
std::vector<PhaseComponent> scan_obstructions(std::span<const cplx> phi, unsigned d, double threshold,
                                              const PrimeField& field, const ScanLimits& limits = {});

Decomposition decompose(std::span<const cplx> phi, unsigned d, double threshold, const PrimeField& field,
                        const ScanLimits& limits = {});

enum class Branch { phase, uniform, inconclusive };
std::string to_string(Branch b);

struct DichotomyOptions {
    double phase_correlation_min = 0.99;
    double uniform_ceiling = 1e3;  // on U_d * p
    EngineLimits engine{};
};

struct DichotomyReport {
    std::uint64_t p = 0;
    std::string family;
    unsigned d = 0;
    PhaseComponent best;
    double u_d = 0.0;
    double u_d_times_p = 0.0;
    bool phase_holds = false;
    bool uniform_holds = false;
    Branch branch = Branch::inconclusive;
};

/// Which side of the phase / uniform dichotomy the table exhibits. d in {2, 3}.
DichotomyReport dichotomy_report(const TraceTable& t, unsigned d, const DichotomyOptions& options = {});

}  // namespace gowers
