#include "gowers/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "gowers/parallel.hpp"
#include "gowers/summation.hpp"

namespace gowers {

namespace {

constexpr double kBoundSlack = 1e-12;

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        const std::string item = trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (!item.empty()) out.push_back(item);
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::uint64_t parse_u64(const std::string& s, std::string_view what) {
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(s, &used);
        if (used != s.size() || s.front() == '-') throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw UsageError("invalid " + std::string(what) + " '" + s + "'");
    }
}

double parse_double(const std::string& s, std::string_view what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw UsageError("invalid " + std::string(what) + " '" + s + "'");
    }
}

// "key=value" pairs separated by ';' or whitespace.
std::vector<std::pair<std::string, std::string>> parse_pairs(std::string_view args) {
    std::string normalized(args);
    std::replace(normalized.begin(), normalized.end(), ' ', ';');
    std::vector<std::pair<std::string, std::string>> out;
    for (const std::string& item : split(normalized, ';')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw UsageError("expected key=value in family arguments, got '" + item + "'");
        out.emplace_back(trim(item.substr(0, eq)), trim(item.substr(eq + 1)));
    }
    return out;
}

}  // namespace

FamilySpec FamilySpec::parse(std::string_view text) {
    const std::string t = trim(text);
    const auto colon = t.find(':');
    if (colon == std::string::npos) return {t, ""};
    return {trim(t.substr(0, colon)), trim(t.substr(colon + 1))};
}

std::string FamilySpec::to_string() const { return args.empty() ? name : name + ":" + args; }

TraceTable generate_family(const FamilySpec& spec, const PrimeField& field) {
    try {
        if (spec.name == "legendre_poly") {
            const std::string f = spec.args.empty() ? "X^3+X+1" : spec.args;
            return legendre_poly_trace(IntPolynomial::parse(f), field);
        }
        if (spec.name == "inverse_phase") {
            if (!spec.args.empty()) throw UsageError("inverse_phase takes no arguments");
            return inverse_phase_trace(field);
        }
        if (spec.name == "kloosterman") {
            if (spec.args.empty() || spec.args == "transform") return kloosterman_trace(field, KloostermanMethod::transform);
            if (spec.args == "direct") return kloosterman_trace(field, KloostermanMethod::direct);
            throw UsageError("kloosterman method must be 'direct' or 'transform'");
        }
        if (spec.name == "legendre_curve") {
            if (spec.args.empty() || spec.args == "char_sum") return legendre_curve_trace(field, CurveMethod::char_sum);
            if (spec.args == "point_count") return legendre_curve_trace(field, CurveMethod::point_count);
            throw UsageError("legendre_curve method must be 'point_count' or 'char_sum'");
        }
        if (spec.name == "mixed_ask") {
            RationalFunction f1{IntPolynomial{}};
            RationalFunction f2{IntPolynomial(std::vector<std::int64_t>{1})};
            std::uint64_t chi = 0;
            for (const auto& [key, value] : parse_pairs(spec.args)) {
                if (key == "f1") {
                    f1 = RationalFunction::parse(value);
                } else if (key == "f2") {
                    f2 = RationalFunction::parse(value);
                } else if (key == "chi") {
                    chi = value == "quadratic" ? (field.p() - 1) / 2 : parse_u64(value, "character index");
                } else {
                    throw UsageError("unknown mixed_ask argument '" + key + "'");
                }
            }
            return mixed_ask_trace(f1, f2, MultiplicativeCharacter(chi, field), field);
        }
    } catch (const UsageError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    throw UsageError("unknown family '" + spec.name + "'");
}

double generic_bound_constant(unsigned conductor, unsigned d) {
    const double exponent = static_cast<double>(d + 1) * std::ldexp(1.0, static_cast<int>(d));
    return std::pow(5.0 * static_cast<double>(conductor), exponent);
}

double paper_bound_constant(const FamilyDescriptor& family, unsigned d) {
    const double exponent = static_cast<double>(d + 1) * std::ldexp(1.0, static_cast<int>(d));
    if (const auto* f = std::get_if<family::LegendrePoly>(&family.kind)) {
        return std::pow(5.0 * f->f.degree() + 10.0, exponent);
    }
    if (std::holds_alternative<family::InversePhase>(family.kind)) return std::pow(15.0, exponent);
    if (std::holds_alternative<family::Kloosterman>(family.kind)) return std::pow(20.0, exponent);
    if (std::holds_alternative<family::LegendreCurve>(family.kind)) return std::pow(25.0, exponent);
    if (!family.conductor_tracked()) return std::numeric_limits<double>::infinity();
    return generic_bound_constant(family.conductor, d);
}

bool ScanRecord::vacuous() const { return std::isinf(bound_constant); }

namespace {

struct ItemOutcome {
    ScanRecord record;
    std::optional<CrossCheck> cross;
};

ScanRecord error_record(std::uint64_t p, const FamilySpec& family, unsigned d, Engine engine, std::string message) {
    ScanRecord r;
    r.p = p;
    r.family = family.to_string();
    r.d = d;
    r.engine = engine;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    r.u_d = r.u_d_times_p = r.bound_constant = r.bound = nan;
    r.error = std::move(message);
    return r;
}

ItemOutcome run_item(const FamilySpec& family, unsigned d, std::uint64_t p, Engine engine, const EngineLimits& limits,
                     std::uint64_t cross_check_max_p) {
    if (p < 3 || !is_prime(p)) return {error_record(p, family, d, engine, "p is not an odd prime"), {}};
    if (p <= d) return {error_record(p, family, d, engine, "requires p > d"), {}};
    try {
        const PrimeField field(p);
        const TraceTable table = generate_family(family, field);
        const NormResult norm = compute_norm({table.values, d, engine, table.descriptor.rank, limits}, field);
        ScanRecord r;
        r.p = p;
        r.family = table.descriptor.label();
        r.d = d;
        r.engine = engine;
        r.u_d = norm.u_d;
        r.u_d_times_p = norm.u_d_times_p;
        r.bound_constant = paper_bound_constant(table.descriptor, d);
        r.bound = r.bound_constant / static_cast<double>(p);
        r.bound_satisfied = r.u_d <= r.bound + kBoundSlack;
        r.elapsed_ms = norm.elapsed.count();

        std::optional<CrossCheck> cross;
        if (d >= 2 && p <= cross_check_max_p) {
            CrossCheck c;
            c.family = r.family;
            c.p = p;
            c.d = d;
            c.accelerated = engine == Engine::accelerated ? norm.u_d : gowers_accelerated(table.values, d, field, limits);
            c.recursive = engine == Engine::recursive ? norm.u_d : gowers_recursive(table.values, d, limits);
            c.tolerance = engine_tolerance(p, d);
            c.ok = std::abs(c.accelerated - c.recursive) <= c.tolerance;
            cross = c;
        }
        return {std::move(r), cross};
    } catch (const std::exception& e) {
        return {error_record(p, family, d, engine, e.what()), {}};
    }
}

bool record_order(const ScanRecord& a, const ScanRecord& b) {
    return std::tie(a.family, a.d, a.p) < std::tie(b.family, b.d, b.p);
}

}  // namespace

std::vector<ScanRecord> scan_primes(const FamilySpec& family, unsigned d, const std::vector<std::uint64_t>& primes,
                                    Engine engine, const ScanOptions& options) {
    std::vector<ScanRecord> out(primes.size());
    EngineLimits inner = options.limits;
    inner.threads = 1;
    parallel_for(
        primes.size(), [&](std::size_t i) { out[i] = run_item(family, d, primes[i], engine, inner, 0).record; },
        options.threads);
    return out;
}

std::vector<ComplexVector> random_sign_tables(std::uint64_t p, unsigned trials, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::vector<ComplexVector> out(trials, ComplexVector(p));
    for (ComplexVector& table : out) {
        for (cplx& v : table) v = (gen() >> 63) ? -1.0 : 1.0;
    }
    return out;
}

BaselineRecord random_baseline(std::uint64_t p, unsigned d, unsigned trials, std::uint64_t seed, Engine engine,
                               const EngineLimits& limits) {
    if (trials == 0) throw UsageError("random_baseline: trials must be >= 1");
    const PrimeField field(p);
    const auto tables = random_sign_tables(p, trials, seed);
    std::vector<double> values(trials);
    for (unsigned t = 0; t < trials; ++t) values[t] = compute_norm({tables[t], d, engine, 1, limits}, field).u_d;
    BaselineRecord r;
    r.p = p;
    r.d = d;
    r.trials = trials;
    r.seed = seed;
    r.engine = engine;
    r.mean_u_d = pairwise_sum(std::span<const double>(values)) / static_cast<double>(trials);
    r.mean_u_d_times_p = r.mean_u_d * static_cast<double>(p);
    return r;
}

VerifyConfig VerifyConfig::parse(std::string_view text) {
    VerifyConfig c;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError("config line " + std::to_string(lineno) + ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "families") {
            c.families.clear();
            for (const auto& item : split(value, ',')) c.families.push_back(FamilySpec::parse(item));
        } else if (key == "d") {
            c.ds.clear();
            for (const auto& item : split(value, ',')) c.ds.push_back(static_cast<unsigned>(parse_u64(item, "d")));
        } else if (key == "primes") {
            c.primes.clear();
            for (const auto& item : split(value, ',')) c.primes.push_back(parse_u64(item, "prime"));
        } else if (key == "ceiling") {
            c.ceiling = parse_double(value, "ceiling");
        } else if (key == "baseline_primes") {
            c.baseline_primes.clear();
            for (const auto& item : split(value, ',')) c.baseline_primes.push_back(parse_u64(item, "prime"));
        } else if (key == "baseline_trials") {
            c.baseline_trials = static_cast<unsigned>(parse_u64(value, "baseline_trials"));
        } else if (key == "seed") {
            c.seed = parse_u64(value, "seed");
        } else if (key == "cross_check_max_p") {
            c.cross_check_max_p = parse_u64(value, "cross_check_max_p");
        } else if (key == "work_cap") {
            c.work_cap = parse_double(value, "work_cap");
        } else if (key == "threads") {
            c.threads = static_cast<unsigned>(parse_u64(value, "threads"));
        } else if (key == "stable_output") {
            c.stable_output = value == "true" || value == "1";
        } else {
            throw UsageError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
    return c;
}

VerifyConfig VerifyConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

VerifyReport verify(const VerifyConfig& config) {
    if (config.families.empty() || config.ds.empty() || config.primes.empty()) {
        throw UsageError("verify: families, d and primes must be non-empty");
    }
    const unsigned max_d = *std::max_element(config.ds.begin(), config.ds.end());
    if (*std::min_element(config.ds.begin(), config.ds.end()) == 0) throw UsageError("verify: d must be >= 1");
    auto check_primes = [&](const std::vector<std::uint64_t>& primes) {
        for (std::uint64_t p : primes) {
            if (p < 3 || !is_prime(p)) throw UsageError("verify: " + std::to_string(p) + " is not an odd prime");
            if (p <= max_d) {
                throw UsageError("verify: p = " + std::to_string(p) + " violates the precondition p > d (d = " +
                                 std::to_string(max_d) + ")");
            }
        }
    };
    check_primes(config.primes);
    check_primes(config.baseline_primes);

    EngineLimits limits;
    limits.oracle_work_cap = config.work_cap;
    limits.threads = 1;

    struct Item {
        const FamilySpec* family;
        unsigned d;
        std::uint64_t p;
    };
    std::vector<Item> items;
    for (const auto& f : config.families) {
        for (unsigned d : config.ds) {
            for (std::uint64_t p : config.primes) items.push_back({&f, d, p});
        }
    }
    std::vector<ItemOutcome> outcomes(items.size());
    parallel_for(
        items.size(),
        [&](std::size_t i) {
            outcomes[i] = run_item(*items[i].family, items[i].d, items[i].p, Engine::accelerated, limits,
                                   config.cross_check_max_p);
        },
        config.threads);

    VerifyReport report;
    for (auto& o : outcomes) {
        report.records.push_back(std::move(o.record));
        if (o.cross) report.cross_checks.push_back(*o.cross);
    }
    std::sort(report.records.begin(), report.records.end(), record_order);
    std::sort(report.cross_checks.begin(), report.cross_checks.end(), [](const CrossCheck& a, const CrossCheck& b) {
        return std::tie(a.family, a.d, a.p) < std::tie(b.family, b.d, b.p);
    });

    for (std::uint64_t p : config.baseline_primes) {
        for (unsigned d : config.ds) {
            report.baselines.push_back(random_baseline(p, d, config.baseline_trials, config.seed, Engine::accelerated, limits));
        }
    }

    for (const ScanRecord& r : report.records) {
        const std::string where = r.family + " d=" + std::to_string(r.d) + " p=" + std::to_string(r.p);
        if (r.error) {
            report.failures.push_back(where + ": error: " + *r.error);
            continue;
        }
        if (!r.bound_satisfied) report.failures.push_back(where + ": literal bound violated");
        if (!(r.u_d_times_p <= config.ceiling)) {
            report.failures.push_back(where + ": U_d*p = " + format_double(r.u_d_times_p) + " exceeds ceiling " +
                                      format_double(config.ceiling));
        }
    }
    for (const CrossCheck& c : report.cross_checks) {
        if (!c.ok) {
            report.failures.push_back(c.family + " d=" + std::to_string(c.d) + " p=" + std::to_string(c.p) +
                                      ": accelerated/recursive disagree by " +
                                      format_double(std::abs(c.accelerated - c.recursive)));
        }
    }
    report.pass = report.failures.empty();
    return report;
}

OutputFormat parse_format(std::string_view name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    throw UsageError("unknown output format '" + std::string(name) + "' (expected csv or json)");
}

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

namespace {

nlohmann::json number_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

double from_json_number(const nlohmann::json& j, double if_null) { return j.is_null() ? if_null : j.get<double>(); }

}  // namespace

void emit(const std::vector<ScanRecord>& records, OutputFormat format, std::ostream& out, bool stable_output) {
    if (format == OutputFormat::csv) {
        out << "p,family,d,engine,u_d,u_d_times_p,bound_constant,bound,bound_satisfied,elapsed_ms\n";
        for (const ScanRecord& r : records) {
            out << r.p << ',' << r.family << ',' << r.d << ',' << to_string(r.engine) << ',' << format_double(r.u_d)
                << ',' << format_double(r.u_d_times_p) << ',' << format_double(r.bound_constant) << ','
                << format_double(r.bound) << ',' << (r.bound_satisfied ? "true" : "false") << ','
                << format_double(stable_output ? 0.0 : r.elapsed_ms) << '\n';
        }
        return;
    }
    nlohmann::json arr = nlohmann::json::array();
    for (const ScanRecord& r : records) {
        nlohmann::json j{{"p", r.p},
                         {"family", r.family},
                         {"d", r.d},
                         {"engine", to_string(r.engine)},
                         {"u_d", number_or_null(r.u_d)},
                         {"u_d_times_p", number_or_null(r.u_d_times_p)},
                         {"bound_constant", number_or_null(r.bound_constant)},
                         {"bound", number_or_null(r.bound)},
                         {"bound_satisfied", r.bound_satisfied},
                         {"elapsed_ms", stable_output ? 0.0 : r.elapsed_ms}};
        if (r.error) j["error"] = *r.error;
        arr.push_back(std::move(j));
    }
    out << arr.dump(2) << '\n';
}

void emit(const std::vector<ScanRecord>& records, OutputFormat format, const std::filesystem::path& path,
          bool stable_output) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    emit(records, format, out, stable_output);
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

void emit_baselines(const std::vector<BaselineRecord>& records, OutputFormat format, std::ostream& out) {
    if (format == OutputFormat::csv) {
        out << "p,d,trials,seed,engine,mean_u_d,mean_u_d_times_p\n";
        for (const BaselineRecord& r : records) {
            out << r.p << ',' << r.d << ',' << r.trials << ',' << r.seed << ',' << to_string(r.engine) << ','
                << format_double(r.mean_u_d) << ',' << format_double(r.mean_u_d_times_p) << '\n';
        }
        return;
    }
    nlohmann::json arr = nlohmann::json::array();
    for (const BaselineRecord& r : records) {
        arr.push_back({{"p", r.p},
                       {"d", r.d},
                       {"trials", r.trials},
                       {"seed", r.seed},
                       {"engine", to_string(r.engine)},
                       {"mean_u_d", r.mean_u_d},
                       {"mean_u_d_times_p", r.mean_u_d_times_p}});
    }
    out << arr.dump(2) << '\n';
}

std::vector<ScanRecord> parse_records_json(std::string_view text) {
    const auto arr = nlohmann::json::parse(text);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<ScanRecord> out;
    for (const auto& j : arr) {
        ScanRecord r;
        r.p = j.at("p").get<std::uint64_t>();
        r.family = j.at("family").get<std::string>();
        r.d = j.at("d").get<unsigned>();
        r.engine = parse_engine(j.at("engine").get<std::string>());
        r.u_d = from_json_number(j.at("u_d"), nan);
        r.u_d_times_p = from_json_number(j.at("u_d_times_p"), nan);
        r.bound_constant = from_json_number(j.at("bound_constant"), inf);
        r.bound = from_json_number(j.at("bound"), inf);
        r.bound_satisfied = j.at("bound_satisfied").get<bool>();
        r.elapsed_ms = j.at("elapsed_ms").get<double>();
        if (j.contains("error")) r.error = j.at("error").get<std::string>();
        out.push_back(std::move(r));
    }
    return out;
}

void write_summary(const VerifyReport& report, const VerifyConfig& config, std::ostream& out) {
    out << fmt::format("verify: {} families, d in {{{}}}, {} primes, ceiling U_d*p <= {}\n", config.families.size(),
                       fmt::join(config.ds, ","), config.primes.size(), format_double(config.ceiling));
    out << fmt::format("{:<36} {:>2} {:>5} {:>24} {:>24} {:>24} {}\n", "family", "d", "p", "u_d", "u_d*p", "bound",
                       "status");
    for (const ScanRecord& r : report.records) {
        std::string status = "ok";
        if (r.error) {
            status = "ERROR";
        } else if (!r.bound_satisfied) {
            status = "BOUND";
        } else if (!(r.u_d_times_p <= config.ceiling)) {
            status = "CEILING";
        } else if (r.vacuous()) {
            status = "ok (vacuous bound)";
        }
        out << fmt::format("{:<36} {:>2} {:>5} {:>24} {:>24} {:>24} {}\n", r.family, r.d, r.p, format_double(r.u_d),
                           format_double(r.u_d_times_p), format_double(r.bound), status);
    }
    out << "\ncross-engine checks (accelerated vs recursive):\n";
    for (const CrossCheck& c : report.cross_checks) {
        out << fmt::format("{:<36} {:>2} {:>5} |diff| = {:<24} tol = {} {}\n", c.family, c.d, c.p,
                           format_double(std::abs(c.accelerated - c.recursive)), format_double(c.tolerance),
                           c.ok ? "ok" : "FAIL");
    }
    out << "\nrandom sign baseline (std::mt19937_64, seed " << config.seed << "):\n";
    for (const BaselineRecord& b : report.baselines) {
        out << fmt::format("p={} d={} trials={} mean_u_d={} mean_u_d*p={}\n", b.p, b.d, b.trials,
                           format_double(b.mean_u_d), format_double(b.mean_u_d_times_p));
    }
    if (!report.failures.empty()) {
        out << "\nfailures:\n";
        for (const auto& f : report.failures) out << "  " << f << '\n';
    }
    out << (report.pass ? "RESULT: PASS\n" : "RESULT: FAIL\n");
}

void write_verify_artifacts(const VerifyReport& report, const VerifyConfig& config, OutputFormat format,
                            const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const std::string ext = format == OutputFormat::csv ? ".csv" : ".json";
    emit(report.records, format, dir / ("scan" + ext), config.stable_output);
    {
        std::ofstream out(dir / ("baseline" + ext), std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + (dir / ("baseline" + ext)).string());
        emit_baselines(report.baselines, format, out);
    }
    std::ofstream out(dir / "summary.txt", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / "summary.txt").string());
    write_summary(report, config, out);
}

}  // namespace gowers
