#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gowers/gowers_engine.hpp"
#include "gowers/trace_functions.hpp"

namespace gowers {

/// Bad user input (config, flags, preconditions); maps to exit code 2.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A family name plus its argument string, e.g. {"legendre_poly", "X^3+X+1"}
/// or {"mixed_ask", "f1=1/X;f2=1;chi=0"}.
struct FamilySpec {
    std::string name;
    std::string args;

    /// "name" or "name:args".
    static FamilySpec parse(std::string_view text);
    std::string to_string() const;
};

/// Known names: legendre_poly, inverse_phase, kloosterman, legendre_curve,
/// mixed_ask. Throws UsageError for unknown names or bad arguments.
TraceTable generate_family(const FamilySpec& spec, const PrimeField& field);

/// (5c)^((d+1) 2^d); +inf on overflow.
double generic_bound_constant(unsigned conductor, unsigned d);

/// The explicit constants (5m+10, 15, 20, 25)^((d+1) 2^d) for the four named
/// families, the generic conductor form otherwise, +inf when the conductor is
/// untracked.
double paper_bound_constant(const FamilyDescriptor& family, unsigned d);

struct ScanRecord {
    std::uint64_t p = 0;
    std::string family;
    unsigned d = 0;
    Engine engine = Engine::accelerated;
    double u_d = 0.0;
    double u_d_times_p = 0.0;
    double bound_constant = 0.0;
    double bound = 0.0;
    bool bound_satisfied = false;
    double elapsed_ms = 0.0;
    std::optional<std::string> error;

    bool vacuous() const;
};

struct ScanOptions {
    EngineLimits limits{};
    // Parallel work items; 0 = hardware concurrency.
    unsigned threads = 0;
};

/// One record per prime. Non-primes, p <= d and other per-item failures
/// become error records; the scan continues.
std::vector<ScanRecord> scan_primes(const FamilySpec& family, unsigned d, const std::vector<std::uint64_t>& primes,
                                    Engine engine, const ScanOptions& options = {});

struct BaselineRecord {
    std::uint64_t p = 0;
    unsigned d = 0;
    unsigned trials = 0;
    std::uint64_t seed = 0;
    Engine engine = Engine::accelerated;
    double mean_u_d = 0.0;
    double mean_u_d_times_p = 0.0;
};

/// Draws `trials` functions F_p -> {+1, -1}; value x of a trial is the sign
/// bit (bit 63) of the next std::mt19937_64 output, seeded with `seed`.
std::vector<ComplexVector> random_sign_tables(std::uint64_t p, unsigned trials, std::uint64_t seed);

/// Mean U_d over random sign functions. d = 1 always uses u1.
BaselineRecord random_baseline(std::uint64_t p, unsigned d, unsigned trials, std::uint64_t seed,
                               Engine engine = Engine::accelerated, const EngineLimits& limits = {});

struct VerifyConfig {
    std::vector<FamilySpec> families{{"legendre_poly", "X^3+X+1"}, {"inverse_phase", ""}, {"kloosterman", ""},
                                     {"legendre_curve", ""}};
    std::vector<unsigned> ds{1, 2, 3};
    std::vector<std::uint64_t> primes{101, 211, 499, 997};
    double ceiling = 1e3;
    std::vector<std::uint64_t> baseline_primes{101};
    unsigned baseline_trials = 50;
    std::uint64_t seed = 1;
    // Recursive-vs-accelerated cross-checks run for d >= 2 at p up to this.
    std::uint64_t cross_check_max_p = 499;
    double work_cap = 1e9;
    bool stable_output = false;
    unsigned threads = 0;

    /// Flat "key = value" text; '#' starts a comment. Lists (including
    /// families, written "name:args") are comma separated.
    static VerifyConfig parse(std::string_view text);
    static VerifyConfig load(const std::filesystem::path& path);
};

struct CrossCheck {
    std::string family;
    std::uint64_t p = 0;
    unsigned d = 0;
    double accelerated = 0.0;
    double recursive = 0.0;
    double tolerance = 0.0;
    bool ok = false;
};

struct VerifyReport {
    std::vector<ScanRecord> records;
    std::vector<BaselineRecord> baselines;
    std::vector<CrossCheck> cross_checks;
    std::vector<std::string> failures;
    bool pass = false;
};

/// Scans every (family, d, p), runs the random baselines and the
/// cross-engine checks. PASS iff every literal bound holds, every
/// U_d * p <= ceiling and every cross-check agrees. Throws UsageError for
/// configs violating p > d or listing non-primes.
VerifyReport verify(const VerifyConfig& config);

enum class OutputFormat { csv, json };
OutputFormat parse_format(std::string_view name);

/// Columns p,family,d,engine,u_d,u_d_times_p,bound_constant,bound,
/// bound_satisfied,elapsed_ms; floats with 17 significant digits.
/// stable_output writes elapsed_ms as 0.
void emit(const std::vector<ScanRecord>& records, OutputFormat format, std::ostream& out, bool stable_output = false);
void emit(const std::vector<ScanRecord>& records, OutputFormat format, const std::filesystem::path& path,
          bool stable_output = false);
void emit_baselines(const std::vector<BaselineRecord>& records, OutputFormat format, std::ostream& out);

/// Parses emitted JSON back into records.
std::vector<ScanRecord> parse_records_json(std::string_view text);

/// Human-readable PASS/FAIL summary of a verify run.
void write_summary(const VerifyReport& report, const VerifyConfig& config, std::ostream& out);

/// Writes scan.<ext>, baseline.<ext> and summary.txt under dir.
void write_verify_artifacts(const VerifyReport& report, const VerifyConfig& config, OutputFormat format,
                            const std::filesystem::path& dir);

std::string format_double(double v);

}  // namespace gowers
