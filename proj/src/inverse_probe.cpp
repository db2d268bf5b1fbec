#include "gowers/inverse_probe.hpp"

#include <algorithm>
#include <cmath>

#include "gowers/dft.hpp"
#include "gowers/parallel.hpp"
#include "gowers/summation.hpp"

namespace gowers {

namespace {

bool component_order(const PhaseComponent& a, const PhaseComponent& b) {
    const double ma = a.magnitude();
    const double mb = b.magnitude();
    if (ma != mb) return ma > mb;
    return std::lexicographical_compare(a.coeffs.rbegin(), a.coeffs.rend(), b.coeffs.rbegin(), b.coeffs.rend());
}

void check_scan_request(std::size_t p, unsigned d, const ScanLimits& limits) {
    if (d == 0) throw std::invalid_argument("scan_obstructions: d must be >= 1");
    if (d >= 4) {
        throw WorkCapExceeded("scan_obstructions: d = " + std::to_string(d) +
                              " would enumerate p^(d-1) phases; full scans stop at degree 2 (d <= 3)");
    }
    const double n = static_cast<double>(p);
    const double work = std::pow(n, static_cast<double>(d) - 2.0) * n * std::log2(n);
    if (work > limits.work_cap) {
        throw WorkCapExceeded("scan_obstructions: estimated cost " + std::to_string(work) + " exceeds the work cap");
    }
}

// For each leading coefficient a (X^2 when d = 3), the correlations with
// a X^2 + b X for all b are one DFT of phi(x) e(-a x^2 / p).
std::vector<ComplexVector> correlation_rows(std::span<const cplx> phi, unsigned d, const PrimeField& field,
                                            const ScanLimits& limits) {
    const std::uint64_t p = field.p();
    if (d == 1) return {ComplexVector{pairwise_sum(phi) / static_cast<double>(p)}};
    if (d == 2) return {dft(phi, field)};
    std::vector<ComplexVector> rows(p);
    parallel_for(
        p,
        [&](std::size_t a) {
            ComplexVector twisted(p);
            for (std::uint64_t x = 0; x < p; ++x) {
                twisted[x] = phi[x] * std::conj(field.character(field.mul(a, field.mul(x, x))));
            }
            rows[a] = dft(twisted, field);
        },
        limits.threads);
    return rows;
}

std::vector<std::uint64_t> coeffs_for(unsigned d, std::uint64_t a, std::uint64_t b) {
    if (d == 1) return {};
    if (d == 2) return {b};
    return {b, a};
}

}  // namespace

unsigned PhaseComponent::degree() const {
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        if (coeffs[k] != 0) return static_cast<unsigned>(k + 1);
    }
    return 0;
}

std::string PhaseComponent::to_string() const {
    std::string out;
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        if (coeffs[k] == 0) continue;
        if (!out.empty()) out += "+";
        if (coeffs[k] != 1) out += std::to_string(coeffs[k]);
        out += "X";
        if (k >= 1) out += "^" + std::to_string(k + 1);
    }
    return out.empty() ? "0" : out;
}

ComplexVector Decomposition::structured_part(const PrimeField& field) const {
    const std::uint64_t p = field.p();
    ComplexVector t2(p, cplx{});
    for (const PhaseComponent& c : components) {
        for (std::uint64_t x = 0; x < p; ++x) t2[x] += c.beta * field.character(evaluate_phase_poly(c.coeffs, x, field));
    }
    return t2;
}

std::uint64_t evaluate_phase_poly(std::span<const std::uint64_t> coeffs, std::uint64_t x, const PrimeField& field) {
    std::uint64_t acc = 0;
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = field.mul(field.add(acc, coeffs[k] % field.p()), x);
    return acc;
}

cplx phase_correlation(std::span<const cplx> phi, std::span<const std::uint64_t> coeffs, const PrimeField& field) {
    const std::uint64_t p = field.p();
    if (phi.size() != p) throw std::invalid_argument("phase_correlation: length does not match p");
    ComplexVector terms(p);
    for (std::uint64_t x = 0; x < p; ++x) {
        terms[x] = phi[x] * std::conj(field.character(evaluate_phase_poly(coeffs, x, field)));
    }
    return pairwise_sum(std::span<const cplx>(terms)) / static_cast<double>(p);
}

std::vector<PhaseComponent> scan_obstructions(std::span<const cplx> phi, unsigned d, double threshold,
                                              const PrimeField& field, const ScanLimits& limits) {
    if (phi.size() != field.p()) throw std::invalid_argument("scan_obstructions: length does not match p");
    check_scan_request(field.p(), d, limits);
    const auto rows = correlation_rows(phi, d, field, limits);
    std::vector<PhaseComponent> out;
    for (std::size_t a = 0; a < rows.size(); ++a) {
        for (std::size_t b = 0; b < rows[a].size(); ++b) {
            if (std::abs(rows[a][b]) >= threshold) out.push_back({coeffs_for(d, a, b), rows[a][b]});
        }
    }
    std::sort(out.begin(), out.end(), component_order);
    return out;
}

Decomposition decompose(std::span<const cplx> phi, unsigned d, double threshold, const PrimeField& field,
                        const ScanLimits& limits) {
    Decomposition dec;
    dec.d = d;
    dec.threshold = threshold;
    dec.components = scan_obstructions(phi, d, threshold, field, limits);
    const ComplexVector t2 = dec.structured_part(field);
    dec.t1.resize(phi.size());
    for (std::size_t x = 0; x < phi.size(); ++x) dec.t1[x] = phi[x] - t2[x];
    return dec;
}

std::string to_string(Branch b) {
    switch (b) {
        case Branch::phase: return "phase";
        case Branch::uniform: return "uniform";
        case Branch::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

DichotomyReport dichotomy_report(const TraceTable& t, unsigned d, const DichotomyOptions& options) {
    if (d < 2 || d > 3) throw std::invalid_argument("dichotomy_report: d must be 2 or 3");
    DichotomyReport r;
    r.p = t.p();
    r.family = t.descriptor.label();
    r.d = d;

    const auto rows = correlation_rows(t.values, d, t.field, ScanLimits{1e18, options.engine.threads});
    bool first = true;
    for (std::size_t a = 0; a < rows.size(); ++a) {
        for (std::size_t b = 0; b < rows[a].size(); ++b) {
            PhaseComponent c{coeffs_for(d, a, b), rows[a][b]};
            if (first || component_order(c, r.best)) {
                r.best = std::move(c);
                first = false;
            }
        }
    }

    NormRequest request{t.values, d, Engine::accelerated, t.descriptor.rank, options.engine};
    const NormResult norm = compute_norm(request, t.field);
    r.u_d = norm.u_d;
    r.u_d_times_p = norm.u_d_times_p;
    r.phase_holds = r.best.magnitude() >= options.phase_correlation_min;
    r.uniform_holds = r.u_d_times_p <= options.uniform_ceiling;
    if (r.phase_holds != r.uniform_holds) r.branch = r.phase_holds ? Branch::phase : Branch::uniform;
    return r;
}

}  // namespace gowers
