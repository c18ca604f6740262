#pragma once

// Command-line front end: hit, trees, verify, sweep.
//
// Exit codes: 0 success, 1 verification or numerical failure, 2 usage error,
// 3 I/O error. Exact values are always strings ("p/q" or digit strings).

#include <charconv>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cyclepower/arboreal.hpp"
#include "cyclepower/verify.hpp"
#include "cyclepower/walk_kernels.hpp"

namespace cyclepower::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kIoError = 3 };

using Json = nlohmann::ordered_json;

struct ResultEntry {
    std::string method;
    std::string value;
    std::optional<std::string> err;
};

struct RunRecord {
    std::string cmd;
    int n = 0;
    int k = 0;
    std::optional<long long> ell;
    std::vector<ResultEntry> results;
    int precision_bits = kDefaultPrecisionBits;
    std::optional<std::string> seed;
    std::optional<std::string> generator;
    double wall_time_ms = 0;
};

inline Json to_json(const RunRecord& r) {
    Json j;
    j["cmd"] = r.cmd;
    j["n"] = r.n;
    j["k"] = r.k;
    j["ell"] = r.ell ? Json(*r.ell) : Json(nullptr);
    j["results"] = Json::array();
    for (const auto& e : r.results) {
        j["results"].push_back(Json{{"method", e.method}, {"value", e.value}, {"err", e.err ? Json(*e.err) : Json()}});
    }
    j["precision_bits"] = r.precision_bits;
    j["seed"] = r.seed ? Json(*r.seed) : Json(nullptr);
    j["generator"] = r.generator ? Json(*r.generator) : Json(nullptr);
    j["wall_time_ms"] = r.wall_time_ms;
    return j;
}

inline const char* kCsvHeader = "n,k,ell,method,value,err_bound\n";

inline std::string csv_row(int n, int k, std::optional<long long> ell, const ResultEntry& e) {
    std::ostringstream os;
    os << n << ',' << k << ',' << (ell ? std::to_string(*ell) : "") << ',' << e.method << ',' << e.value << ','
       << e.err.value_or("") << '\n';
    return os.str();
}

inline void write_record(std::ostream& out, const RunRecord& r, const std::string& format) {
    if (format == "json") {
        out << to_json(r).dump() << '\n';
    } else if (format == "csv") {
        out << kCsvHeader;
        for (const auto& e : r.results) out << csv_row(r.n, r.k, r.ell, e);
    } else {
        out << r.cmd << "  N=" << r.n << " k=" << r.k;
        if (r.ell) out << " ell=" << *r.ell;
        out << "  precision=" << r.precision_bits << " bits\n";
        for (const auto& e : r.results) {
            out << "  " << std::left << std::setw(16) << e.method << ' ' << e.value;
            if (e.err) out << "  (err " << *e.err << ")";
            out << '\n';
        }
        if (r.generator) out << "  generator=" << *r.generator << " seed=" << r.seed.value_or("") << '\n';
        out << "  wall_time_ms=" << std::fixed << std::setprecision(3) << r.wall_time_ms << '\n';
        out.unsetf(std::ios::floatfield);
    }
}

inline std::string shortest(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string sci(const Real& v) { return v.str(3, std::ios_base::scientific); }

inline std::string exact_str(const Rational& q) { return q.str(); }
inline std::string exact_str(const BigInt& z) { return z.str(); }

/// Result entries for a hitting profile.
inline std::vector<ResultEntry> entries(const HittingProfile& p, int digits) {
    std::vector<ResultEntry> out;
    for (const auto& v : p.values) {
        ResultEntry e{to_string(v.method), "", std::nullopt};
        if (v.exact) {
            e.value = exact_str(*v.exact);
        } else if (v.method == HitMethod::simulate) {
            e.value = shortest(p.simulation->mean);
            e.err = shortest(p.simulation->std_error);
        } else {
            e.value = format_real(v.value, digits);
        }
        if (v.error_bound && v.method != HitMethod::simulate) e.err = sci(*v.error_bound);
        out.push_back(std::move(e));
    }
    return out;
}

struct Range {
    long long lo = 0;
    long long hi = -1;
};

inline Range parse_range(const std::string& text) {
    const auto colon = text.find(':');
    auto parse = [&](const std::string& s) {
        long long v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
            throw CLI::ValidationError("range", "expected LO:HI with integers, got '" + text + "'");
        }
        return v;
    };
    if (colon == std::string::npos) {
        const long long v = parse(text);
        return {v, v};
    }
    return {parse(text.substr(0, colon)), parse(text.substr(colon + 1))};
}

class ElapsedMs {
public:
    double read() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// ---------------------------------------------------------------------------

struct HitArgs {
    long long n = 0, k = 0, ell = 0;
    std::string method = "all";
    std::string form = "exp";
    int precision = kDefaultPrecisionBits;
    std::uint64_t walks = 100000;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string format = "text";
    int digits = 25;
    bool erratum = false;
};

inline int cmd_hit(const HitArgs& a, std::ostream& out) {
    ElapsedMs clock;
    const auto spec = GraphSpec::create(a.n, a.k);
    if (a.ell < 0 || a.ell >= spec.n()) throw ParameterError("--ell must satisfy 0 <= ell < N");
    HittingOptions opts;
    opts.precision_bits = a.precision;
    opts.form = a.form == "seq" ? RatioForm::sequence : RatioForm::exponential;
    opts.walks = a.walks;
    opts.seed = a.seed;
    opts.threads = a.threads;
    if (a.method == "all") {
        opts.methods = {HitMethod::exact, HitMethod::spectral, HitMethod::closed, HitMethod::simulate};
    } else if (a.method == "exact") {
        opts.methods = {HitMethod::exact};
    } else if (a.method == "spectral") {
        opts.methods = {HitMethod::spectral};
    } else if (a.method == "closed") {
        opts.methods = {HitMethod::closed};
    } else {
        opts.methods = {HitMethod::simulate};
    }
    if (a.erratum) opts.methods.push_back(HitMethod::closed_literal);

    const auto profile = hitting_profile(spec, a.ell, opts);
    RunRecord rec;
    rec.cmd = "hit";
    rec.n = spec.n();
    rec.k = spec.k();
    rec.ell = a.ell;
    rec.precision_bits = a.precision;
    rec.results = entries(profile, a.digits);
    if (profile.simulation) {
        rec.seed = std::to_string(profile.simulation->seed);
        rec.generator = profile.simulation->generator;
    }
    rec.wall_time_ms = clock.read();
    write_record(out, rec, a.format);
    return kOk;
}

struct TreesArgs {
    long long n = 0, k = 0;
    std::optional<long long> ell;
    int precision = kDefaultPrecisionBits;
    std::string format = "text";
    int digits = 25;
};

inline int cmd_trees(const TreesArgs& a, std::ostream& out) {
    ElapsedMs clock;
    const auto spec = GraphSpec::create(a.n, a.k);
    if (a.ell && (*a.ell < 0 || *a.ell >= spec.n())) throw ParameterError("--ell must satisfy 0 <= ell < N");
    PrecisionScope scope(a.precision);
    const auto c = arboreal_counts(spec, a.ell, a.precision);
    const Real tau = to_real(c.tau);
    RunRecord rec;
    rec.cmd = "trees";
    rec.n = spec.n();
    rec.k = spec.k();
    rec.ell = a.ell;
    rec.precision_bits = a.precision;
    rec.results.push_back({"tau_det", exact_str(c.tau), std::nullopt});
    rec.results.push_back({"tau_eigen", exact_str(nearest_integer_checked(c.tau_eigen, "tau_eigen")),
                           sci(abs(Real(c.tau_eigen - tau)))});
    rec.results.push_back({"tau_product", exact_str(nearest_integer_checked(c.tau_product, "tau_product")),
                           sci(abs(Real(c.tau_product - tau)))});
    if (c.resistance) rec.results.push_back({"resistance", exact_str(*c.resistance), std::nullopt});
    if (c.forests) rec.results.push_back({"forests", exact_str(*c.forests), std::nullopt});
    if (c.tau_contracted) rec.results.push_back({"tau_contracted", exact_str(*c.tau_contracted), std::nullopt});
    (void)a.digits;
    rec.wall_time_ms = clock.read();
    write_record(out, rec, a.format);
    return kOk;
}

struct VerifyArgs {
    int kmax = 3;
    int nmax = 24;
    int precision = kDefaultPrecisionBits;
    std::string report = "summary";
};

inline std::string tuple_str(const FailingTuple& t) {
    std::ostringstream os;
    os << "N=" << t.n << " k=" << t.k << " ell=" << (t.ell ? std::to_string(*t.ell) : "-");
    return os.str();
}

inline void print_erratum(std::ostream& out, const ErratumFixture& e, int digits) {
    out << "  erratum (informational) N=" << e.n << " k=" << e.k << " ell=" << e.ell << ": oracle "
        << exact_str(e.oracle) << ", verified closed form " << format_real(e.verified_closed, digits)
        << ", full-index sequence form " << format_real(e.literal_sequence_form, digits) << ", doubled-index F_2l form "
        << exact_str(e.doubled_index_fibonacci_form) << " (~" << format_real(to_real(e.doubled_index_fibonacci_form), digits)
        << "), deviation " << format_real(e.deviation, 6) << '\n';
}

inline int cmd_verify(const VerifyArgs& a, std::ostream& out) {
    if (a.kmax < 1 || a.kmax > 8) throw ParameterError("--kmax must be in 1..8");
    if (a.nmax < 2 * a.kmax + 1) throw ParameterError("--nmax must be >= 2*kmax+1");
    ElapsedMs clock;
    const bool full = a.report == "full";
    const auto report = run_verification(a.kmax, a.nmax, a.precision, full);

    out << "verify kmax=" << a.kmax << " nmax=" << a.nmax << " precision=" << a.precision << " bits\n";
    out << std::left << std::setw(28) << "check" << std::setw(10) << "cases" << std::setw(14) << "max_dev"
        << std::setw(12) << "tol" << "status\n";
    for (const auto& c : report.checks) {
        std::ostringstream dev, tol;
        dev << std::setprecision(3) << std::scientific << c.max_deviation;
        tol << std::setprecision(3) << std::scientific << c.tolerance;
        out << std::left << std::setw(28) << c.id << std::setw(10) << c.cases << std::setw(14) << dev.str()
            << std::setw(12) << tol.str() << (c.passed() ? "PASS" : "FAIL");
        if (!c.passed()) out << "  first failure " << tuple_str(*c.first_failure);
        out << '\n';
        if (full) {
            out << "    " << c.description << '\n';
            for (const auto& [k, d] : c.max_deviation_by_k) {
                std::ostringstream kd;
                kd << std::setprecision(3) << std::scientific << d;
                out << "    k=" << k << " max_dev=" << kd.str() << '\n';
            }
        }
    }
    for (const auto& e : report.errata) print_erratum(out, e, 12);
    for (const auto& c : report.checks) {
        if (!c.passed()) out << "FAIL " << c.id << " at " << tuple_str(*c.first_failure) << '\n';
    }
    out << (report.passed() ? "result: PASS" : "result: FAIL") << "  wall_time_ms=" << std::fixed
        << std::setprecision(1) << clock.read() << '\n';
    out.unsetf(std::ios::floatfield);
    return report.passed() ? kOk : kVerifyFailed;
}

struct SweepArgs {
    std::string n_range = "5:8";
    std::string k_range = "1:2";
    std::string quantity = "hit";
    std::string out_path = "-";
    std::string format = "csv";
    int precision = kDefaultPrecisionBits;
    int digits = 25;
};

struct SweepRow {
    int n, k;
    std::optional<long long> ell;
    ResultEntry entry;
};

inline std::vector<SweepRow> sweep_rows(const SweepArgs& a) {
    const Range nr = parse_range(a.n_range);
    const Range kr = parse_range(a.k_range);
    PrecisionScope scope(a.precision);
    std::vector<SweepRow> rows;
    for (long long n = nr.lo; n <= nr.hi; ++n) {
        for (long long k = kr.lo; k <= kr.hi; ++k) {
            if (k < 1 || n < 3 || n < 2 * k + 1) continue;  // outside the standing assumption
            const auto spec = GraphSpec::create(n, k);
            const int ni = spec.n(), ki = spec.k();
            const auto sf = partial_fractions(ki, a.precision);
            const Real m = Real(spec.edge_count());
            auto real_entry = [&](const char* method, const Real& v, const Real& ref) {
                return ResultEntry{method, format_real(v, a.digits), sci(abs(Real(v - ref)))};
            };
            if (a.quantity == "tau") {
                const BigInt t = tau_det(spec);
                rows.push_back({ni, ki, std::nullopt, {"tau_det", exact_str(t), std::nullopt}});
                rows.push_back({ni, ki, std::nullopt, real_entry("tau_eigen", tau_eigen(spec, a.precision), to_real(t))});
                rows.push_back({ni, ki, std::nullopt, real_entry("tau_product", tau_product(spec, sf), to_real(t))});
                continue;
            }
            const auto h = hit_exact_profile(spec);
            const BigInt t = a.quantity == "forests" ? tau_det(spec) : BigInt(0);
            const Real tp = a.quantity == "forests" ? tau_product(spec, sf) : Real(0);
            for (int ell = a.quantity == "forests" ? 1 : 0; ell < ni; ++ell) {
                const Real hs = hit_spectral(spec, ell, a.precision);
                const Real hc = hit_closed(spec, ell, sf);
                const Real ex = to_real(h[ell]);
                if (a.quantity == "hit") {
                    rows.push_back({ni, ki, ell, {"exact", exact_str(h[ell]), std::nullopt}});
                    rows.push_back({ni, ki, ell, real_entry("spectral", hs, ex)});
                    rows.push_back({ni, ki, ell, real_entry("closed", hc, ex)});
                } else if (a.quantity == "resist") {
                    const Rational r = h[ell] / Rational(spec.edge_count());
                    rows.push_back({ni, ki, ell, {"exact", exact_str(r), std::nullopt}});
                    rows.push_back({ni, ki, ell, real_entry("spectral", Real(hs / m), to_real(r))});
                    rows.push_back({ni, ki, ell, real_entry("closed", Real(hc / m), to_real(r))});
                } else {
                    const BigInt f = forests(spec, ell);
                    rows.push_back({ni, ki, ell, {"forests", exact_str(f), std::nullopt}});
                    rows.push_back({ni, ki, ell, {"tau_contracted", exact_str(tau_contracted(spec, ell)), std::nullopt}});
                    rows.push_back({ni, ki, ell, real_entry("product_closed", Real(tp * hc / m), to_real(f))});
                }
            }
        }
    }
    return rows;
}

inline int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
    const auto rows = sweep_rows(a);
    std::ostringstream buf;
    if (a.format == "json") {
        Json j;
        j["cmd"] = "sweep";
        j["quantity"] = a.quantity;
        j["precision_bits"] = a.precision;
        j["rows"] = Json::array();
        for (const auto& r : rows) {
            j["rows"].push_back(Json{{"n", r.n},
                                     {"k", r.k},
                                     {"ell", r.ell ? Json(*r.ell) : Json()},
                                     {"method", r.entry.method},
                                     {"value", r.entry.value},
                                     {"err", r.entry.err ? Json(*r.entry.err) : Json()}});
        }
        buf << j.dump() << '\n';
    } else {
        buf << kCsvHeader;
        for (const auto& r : rows) buf << csv_row(r.n, r.k, r.ell, r.entry);
    }
    if (a.out_path == "-") {
        out << buf.str();
        return kOk;
    }
    std::ofstream file(a.out_path, std::ios::binary | std::ios::trunc);
    if (!file) {
        err << "error: cannot open output file '" << a.out_path << "'\n";
        return kIoError;
    }
    file << buf.str();
    file.close();
    if (!file) {
        err << "error: failed writing '" << a.out_path << "'\n";
        return kIoError;
    }
    return kOk;
}

// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hitting times, resistances and tree counts on powers of the cycle graph", "cyclepower"};
    app.require_subcommand(1);

    HitArgs hit;
    auto* hit_cmd = app.add_subcommand("hit", "average hitting time h(0, ell)");
    hit_cmd->add_option("--n", hit.n, "vertex count N")->required();
    hit_cmd->add_option("--k", hit.k, "power k")->required();
    hit_cmd->add_option("--ell", hit.ell, "target vertex")->required();
    hit_cmd->add_option("--method", hit.method)
        ->check(CLI::IsMember({"exact", "spectral", "closed", "simulate", "all"}))
        ->capture_default_str();
    hit_cmd->add_option("--form", hit.form, "correction ratio form")
        ->check(CLI::IsMember({"exp", "seq"}))
        ->capture_default_str();
    hit_cmd->add_option("--precision", hit.precision, "working precision in bits")
        ->check(CLI::Range(kMinPrecisionBits, 1 << 16))
        ->capture_default_str();
    hit_cmd->add_option("--walks", hit.walks, "Monte Carlo trajectories")->check(CLI::PositiveNumber)->capture_default_str();
    hit_cmd->add_option("--seed", hit.seed, "Monte Carlo seed")->capture_default_str();
    hit_cmd->add_option("--threads", hit.threads, "simulation threads (0 = all cores)")->capture_default_str();
    hit_cmd->add_option("--format", hit.format)->check(CLI::IsMember({"json", "csv", "text"}))->capture_default_str();
    hit_cmd->add_option("--digits", hit.digits, "significant digits for real values")
        ->check(CLI::Range(1, 10000))
        ->capture_default_str();
    hit_cmd->add_flag("--erratum", hit.erratum, "also report the full-index sequence form and its deviation");

    TreesArgs trees;
    auto* trees_cmd = app.add_subcommand("trees", "spanning trees, resistance, forests, contracted trees");
    trees_cmd->add_option("--n", trees.n, "vertex count N")->required();
    trees_cmd->add_option("--k", trees.k, "power k")->required();
    trees_cmd->add_option("--ell", trees.ell, "target vertex (adds R, F and contracted tau)");
    trees_cmd->add_option("--precision", trees.precision)->check(CLI::Range(kMinPrecisionBits, 1 << 16))->capture_default_str();
    trees_cmd->add_option("--format", trees.format)->check(CLI::IsMember({"json", "csv", "text"}))->capture_default_str();
    trees_cmd->add_option("--digits", trees.digits)->check(CLI::Range(1, 10000))->capture_default_str();

    VerifyArgs verify;
    auto* verify_cmd = app.add_subcommand("verify", "cross-check every method and identity");
    verify_cmd->add_option("--kmax", verify.kmax)->capture_default_str();
    verify_cmd->add_option("--nmax", verify.nmax)->capture_default_str();
    verify_cmd->add_option("--precision", verify.precision)->check(CLI::Range(kMinPrecisionBits, 1 << 16))->capture_default_str();
    verify_cmd->add_option("--report", verify.report)->check(CLI::IsMember({"summary", "full"}))->capture_default_str();

    SweepArgs sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "tabulate a quantity over ranges of N and k");
    sweep_cmd->add_option("--n-range", sweep.n_range, "LO:HI")->capture_default_str();
    sweep_cmd->add_option("--k-range", sweep.k_range, "LO:HI")->capture_default_str();
    sweep_cmd->add_option("--quantity", sweep.quantity)
        ->check(CLI::IsMember({"hit", "resist", "tau", "forests"}))
        ->capture_default_str();
    sweep_cmd->add_option("--out", sweep.out_path, "output file ('-' for stdout)")->capture_default_str();
    sweep_cmd->add_option("--format", sweep.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sweep_cmd->add_option("--precision", sweep.precision)->check(CLI::Range(kMinPrecisionBits, 1 << 16))->capture_default_str();
    sweep_cmd->add_option("--digits", sweep.digits)->check(CLI::Range(1, 10000))->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*hit_cmd) return cmd_hit(hit, out);
        if (*trees_cmd) return cmd_trees(trees, out);
        if (*verify_cmd) return cmd_verify(verify, out);
        if (*sweep_cmd) {
            parse_range(sweep.n_range);
            parse_range(sweep.k_range);
            return cmd_sweep(sweep, out, err);
        }
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kVerifyFailed;
    }
    return kUsage;
}

}  // namespace cyclepower::cli
