// Command-line front end: gen, norm, probe, scan, baseline, verify.
// Exit codes: 0 PASS / success, 1 FAIL, 2 usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "gowers/gowers_engine.hpp"
#include "gowers/harness.hpp"
#include "gowers/inverse_probe.hpp"
#include "gowers/trace_functions.hpp"

namespace {

using namespace gowers;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct FamilyOptions {
    std::string family = "kloosterman";
    std::string family_args;
};

void add_family_options(CLI::App* cmd, FamilyOptions& opts) {
    cmd->add_option("--family", opts.family,
                    "legendre_poly | inverse_phase | kloosterman | legendre_curve | mixed_ask")
        ->capture_default_str();
    cmd->add_option("--family-args", opts.family_args,
                    "legendre_poly: polynomial (X^3+X+1); kloosterman: direct|transform; "
                    "legendre_curve: point_count|char_sum; mixed_ask: f1=..;f2=..;chi=..");
}

// Writes to `path`, or stdout when empty or "-".
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) throw UsageError("cannot write " + path);
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

std::vector<std::uint64_t> parse_primes(const std::string& text) {
    std::vector<std::uint64_t> out;
    if (const auto dots = text.find(".."); dots != std::string::npos) {
        const std::uint64_t lo = std::stoull(text.substr(0, dots));
        const std::uint64_t hi = std::stoull(text.substr(dots + 2));
        for (std::uint64_t p = lo; p <= hi; ++p) {
            if (p >= 3 && is_prime(p)) out.push_back(p);
        }
        return out;
    }
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!item.empty()) out.push_back(std::stoull(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.empty()) throw UsageError("no primes given");
    return out;
}

int run_gen(std::uint64_t p, const FamilyOptions& fam, const std::string& output) {
    const PrimeField field(p);
    const TraceTable t = generate_family({fam.family, fam.family_args}, field);
    Sink sink(output);
    auto& out = sink.stream();
    out << "# family=" << t.descriptor.label() << " p=" << p << " rank=" << t.descriptor.rank
        << " conductor=" << t.descriptor.conductor << '\n';
    for (std::uint64_t x = 0; x < p; ++x) {
        out << x << ',' << format_double(t.values[x].real()) << ',' << format_double(t.values[x].imag()) << '\n';
    }
    return kExitPass;
}

int run_norm(std::uint64_t p, const FamilyOptions& fam, unsigned d, const std::string& engine_name,
             const std::string& format_name, double work_cap) {
    const OutputFormat format = parse_format(format_name);
    const Engine engine = parse_engine(engine_name);
    if (p <= d) throw UsageError("norm: requires p > d");
    const PrimeField field(p);
    const TraceTable t = generate_family({fam.family, fam.family_args}, field);
    EngineLimits limits;
    limits.oracle_work_cap = work_cap;
    const NormResult r = compute_norm({t.values, d, engine, t.descriptor.rank, limits}, field);

    ScanRecord rec;
    rec.p = p;
    rec.family = t.descriptor.label();
    rec.d = d;
    rec.engine = engine;
    rec.u_d = r.u_d;
    rec.u_d_times_p = r.u_d_times_p;
    rec.bound_constant = paper_bound_constant(t.descriptor, d);
    rec.bound = rec.bound_constant / static_cast<double>(p);
    rec.bound_satisfied = rec.u_d <= rec.bound + 1e-12;
    rec.elapsed_ms = r.elapsed.count();
    if (format == OutputFormat::csv) {
        emit({rec}, format, std::cout);
    } else {
        std::ostringstream buf;
        emit({rec}, format, buf);
        auto j = nlohmann::json::parse(buf.str()).at(0);
        j["norm"] = r.norm;
        std::cout << j.dump(2) << '\n';
    }
    return kExitPass;
}

int run_probe(std::uint64_t p, const FamilyOptions& fam, unsigned d, double threshold, double ceiling,
              const std::string& format_name) {
    const OutputFormat format = parse_format(format_name);
    if (p <= d) throw UsageError("probe: requires p > d");
    const PrimeField field(p);
    const TraceTable t = generate_family({fam.family, fam.family_args}, field);
    const Decomposition dec = decompose(t.values, d, threshold, field);
    const double residual = compute_norm({dec.t1, d, Engine::accelerated, 0, {}}, field).u_d;
    std::string branch = "inconclusive";
    if (d >= 2) {
        DichotomyOptions opts;
        opts.uniform_ceiling = ceiling;
        branch = to_string(dichotomy_report(t, d, opts).branch);
    }

    nlohmann::json components = nlohmann::json::array();
    for (const PhaseComponent& c : dec.components) {
        components.push_back({{"coeffs", c.coeffs}, {"beta_re", c.beta.real()}, {"beta_im", c.beta.imag()}});
    }
    if (format == OutputFormat::json) {
        nlohmann::json j{{"p", p},
                         {"family", t.descriptor.label()},
                         {"d", d},
                         {"components", components},
                         {"residual_u_d", residual},
                         {"residual_u_d_times_p", residual * static_cast<double>(p)},
                         {"branch", branch}};
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "p,family,d,poly,beta_re,beta_im,magnitude\n";
        for (const PhaseComponent& c : dec.components) {
            std::cout << p << ',' << t.descriptor.label() << ',' << d << ',' << c.to_string() << ','
                      << format_double(c.beta.real()) << ',' << format_double(c.beta.imag()) << ','
                      << format_double(c.magnitude()) << '\n';
        }
        std::cout << "# residual_u_d=" << format_double(residual)
                  << " residual_u_d_times_p=" << format_double(residual * static_cast<double>(p)) << " branch=" << branch
                  << '\n';
    }
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gowers uniformity norms of trace functions over F_p"};
    app.require_subcommand(1);

    std::uint64_t p = 101;
    unsigned d = 2;
    FamilyOptions fam;
    std::string output;
    std::string format = "csv";
    std::string engine = "accelerated";
    std::uint64_t seed = 1;
    double ceiling = 1e3;
    double work_cap = 1e9;
    bool stable = false;
    double threshold = 0.5;
    std::string primes_text = "101,211,499,997";
    unsigned trials = 50;
    std::string config_path;

    auto* gen = app.add_subcommand("gen", "emit a trace-function table as CSV");
    gen->add_option("--p", p, "odd prime")->required();
    add_family_options(gen, fam);
    gen->add_option("--output", output, "output path (default stdout)");

    auto* norm = app.add_subcommand("norm", "compute one U_d value");
    norm->add_option("--p", p, "odd prime")->required();
    add_family_options(norm, fam);
    norm->add_option("--d", d, "Gowers degree")->capture_default_str();
    norm->add_option("--engine", engine, "oracle | recursive | accelerated")->capture_default_str();
    norm->add_option("--output", format, "csv | json")->capture_default_str();
    norm->add_option("--work-cap", work_cap, "oracle work cap (terms)")->capture_default_str();

    auto* probe = app.add_subcommand("probe", "scan for polynomial-phase obstructions");
    probe->add_option("--p", p, "odd prime")->required();
    add_family_options(probe, fam);
    probe->add_option("--d", d, "Gowers degree (1..3)")->capture_default_str();
    probe->add_option("--threshold", threshold, "minimum |beta| reported")->capture_default_str();
    probe->add_option("--ceiling", ceiling, "uniform-branch ceiling on U_d*p")->capture_default_str();
    probe->add_option("--output", format, "json | csv")->capture_default_str();

    auto* scan = app.add_subcommand("scan", "sweep a family over primes");
    add_family_options(scan, fam);
    scan->add_option("--d", d, "Gowers degree")->capture_default_str();
    scan->add_option("--primes", primes_text, "comma list or lo..hi range")->capture_default_str();
    scan->add_option("--engine", engine, "oracle | recursive | accelerated")->capture_default_str();
    scan->add_option("--output", output, "output path (default stdout)");
    scan->add_option("--format", format, "csv | json")->capture_default_str();
    scan->add_option("--work-cap", work_cap, "oracle work cap (terms)")->capture_default_str();
    scan->add_flag("--stable-output", stable, "write elapsed_ms as 0");

    auto* baseline = app.add_subcommand("baseline", "mean U_d of random +-1 functions");
    baseline->add_option("--p", p, "odd prime")->required();
    baseline->add_option("--d", d, "Gowers degree")->capture_default_str();
    baseline->add_option("--trials", trials, "number of random functions")->capture_default_str();
    baseline->add_option("--seed", seed, "mt19937_64 seed")->capture_default_str();
    baseline->add_option("--engine", engine, "oracle | recursive | accelerated")->capture_default_str();
    baseline->add_option("--output", output, "output path (default stdout)");
    baseline->add_option("--format", format, "csv | json")->capture_default_str();

    auto* verify_cmd = app.add_subcommand("verify", "check the explicit bounds over a prime grid");
    verify_cmd->add_option("--config", config_path, "key = value config file");
    verify_cmd->add_option("--output", output, "artifact directory");
    verify_cmd->add_option("--format", format, "csv | json")->capture_default_str();
    auto* seed_opt = verify_cmd->add_option("--seed", seed, "baseline seed");
    auto* ceiling_opt = verify_cmd->add_option("--ceiling", ceiling, "ceiling on U_d*p");
    auto* cap_opt = verify_cmd->add_option("--work-cap", work_cap, "oracle work cap (terms)");
    verify_cmd->add_flag("--stable-output", stable, "write elapsed_ms as 0");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen->parsed()) return run_gen(p, fam, output);
        if (norm->parsed()) return run_norm(p, fam, d, engine, format, work_cap);
        if (probe->parsed()) return run_probe(p, fam, d, threshold, ceiling, format);
        if (scan->parsed()) {
            const OutputFormat fmt = parse_format(format);
            ScanOptions opts;
            opts.limits.oracle_work_cap = work_cap;
            const auto records = scan_primes({fam.family, fam.family_args}, d, parse_primes(primes_text),
                                             parse_engine(engine), opts);
            Sink sink(output);
            emit(records, fmt, sink.stream(), stable);
            for (const auto& r : records) {
                if (r.error) std::cerr << "p=" << r.p << ": " << *r.error << '\n';
            }
            return kExitPass;
        }
        if (baseline->parsed()) {
            const OutputFormat fmt = parse_format(format);
            if (p <= d) throw UsageError("baseline: requires p > d");
            const auto r = random_baseline(p, d, trials, seed, parse_engine(engine));
            Sink sink(output);
            emit_baselines({r}, fmt, sink.stream());
            return kExitPass;
        }
        if (verify_cmd->parsed()) {
            VerifyConfig config = config_path.empty() ? VerifyConfig{} : VerifyConfig::load(config_path);
            if (seed_opt->count() > 0) config.seed = seed;
            if (ceiling_opt->count() > 0) config.ceiling = ceiling;
            if (cap_opt->count() > 0) config.work_cap = work_cap;
            if (stable) config.stable_output = true;
            const OutputFormat fmt = parse_format(format);
            const VerifyReport report = verify(config);
            if (!output.empty()) write_verify_artifacts(report, config, fmt, output);
            write_summary(report, config, std::cout);
            return report.pass ? kExitPass : kExitFail;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFail;
    }
    return kExitUsage;
}
