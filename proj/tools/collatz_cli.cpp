// Command-line front end: bound tables, per-N reports, invariant suites,
// integer-root searches, root sets, and raw polynomial dumps, in json, csv,
// or text.  Exit codes: 0 success, 1 numeric failure, 2 mathematical-claim
// violation, 64 usage error.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "collatz/collatz.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kNumericFailure = 1;
constexpr int kClaimViolation = 2;
constexpr int kUsageError = 64;

struct Config {
    collatz::Variant variant = collatz::Variant::Standard;
    std::string format = "text";
    std::int64_t workers = 1;
    std::int64_t max_steps = collatz::kDefaultMaxSteps;
    double tol_root = 1e-9;  // scaled-residual certification tolerance
    std::string output_path;
    bool timings = false;
};

std::string fmt(const char* printf_fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, printf_fmt, v);
    return buf;
}
std::string f4(double v) { return fmt("%.4f", v); }    // text tables
std::string f7(double v) { return fmt("%.7g", v); }    // h(t) table
std::string f17(double v) { return fmt("%.17g", v); }  // csv, full round-trip

collatz::RootFindingOptions root_options(const Config& cfg) {
    collatz::RootFindingOptions opts;
    opts.residual_tol = cfg.tol_root;
    return opts;
}

std::optional<mpz_class> parse_positive(const std::string& s) {
    if (s.empty()) return std::nullopt;
    for (char c : s)
        if (c < '0' || c > '9') return std::nullopt;
    mpz_class n(s);
    if (n < 1) return std::nullopt;
    return n;
}

int usage_error(const std::string& message) {
    std::cerr << "usage error: " << message << "\n";
    return kUsageError;
}

// ---------------------------------------------------------------- table ----

int cmd_table(const Config& cfg, std::ostream& out, std::vector<std::int64_t> ts) {
    if (ts.empty()) ts = {3, 10, 1000, 100000, 10000000};
    for (std::int64_t t : ts)
        if (t < 0) return usage_error("table: every t must be >= 0");
    std::vector<std::pair<std::int64_t, double>> rows;
    rows.reserve(ts.size());
    for (std::int64_t t : ts) rows.emplace_back(t, collatz::h_upper(t));

    if (cfg.format == "json") {
        nlohmann::json table = nlohmann::json::array();
        for (const auto& [t, h] : rows) table.push_back({{"t", t}, {"h", h}});
        out << nlohmann::json{{"table", std::move(table)}}.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        out << "t,h_t\n";
        for (const auto& [t, h] : rows) out << t << "," << f17(h) << "\n";
    } else {
        out << "t           h(t)\n";
        for (const auto& [t, h] : rows) {
            char line[64];
            std::snprintf(line, sizeof line, "%-11lld %s\n", static_cast<long long>(t),
                          f7(h).c_str());
            out << line;
        }
    }
    return kOk;
}

// ----------------------------------------------------------------- poly ----

int cmd_poly(const Config& cfg, std::ostream& out, const std::string& n_str) {
    auto N = parse_positive(n_str);
    if (!N) return usage_error("poly: N must be a positive integer");
    collatz::CollatzPolynomial p = collatz::build(*N, cfg.variant, cfg.max_steps);

    if (cfg.format == "json") {
        out << collatz::to_json(p).dump(2) << "\n";
    } else if (cfg.format == "csv") {
        out << "k,coefficient\n";
        for (std::size_t k = 0; k < p.coeffs.size(); ++k)
            out << k << "," << p.coeffs[k].get_str() << "\n";
    } else {
        out << "N: " << p.number.get_str() << "\n"
            << "variant: " << collatz::variant_name(p.variant) << "\n"
            << "degree: " << p.degree() << "\n"
            << "coefficients (ascending):";
        for (const mpz_class& c : p.coeffs) out << " " << c.get_str();
        out << "\n";
    }
    return kOk;
}

// ---------------------------------------------------------------- roots ----

int cmd_roots(const Config& cfg, std::ostream& out, const std::string& n_str) {
    auto N = parse_positive(n_str);
    if (!N) return usage_error("roots: N must be a positive integer");
    collatz::CollatzPolynomial p = collatz::build(*N, cfg.variant, cfg.max_steps);
    if (p.degree() == 0) {
        if (cfg.format == "json")
            out << nlohmann::json{{"N", N->get_str()}, {"degree", 0},
                                  {"notice", "degree 0; no roots"}}.dump(2)
                << "\n";
        else
            out << "P_" << N->get_str() << " has degree 0; no roots.\n";
        return kOk;
    }
    collatz::RootSet rs = collatz::find_roots(p, root_options(cfg));
    collatz::VietaDiagnostic vd = collatz::vieta_check(p, rs);

    if (cfg.format == "json") {
        nlohmann::json j = collatz::to_json(rs);
        j["N"] = N->get_str();
        j["variant"] = collatz::variant_name(p.variant);
        j["vieta"] = {{"sum_deviation", vd.sum_deviation},
                      {"product_deviation", vd.product_deviation},
                      {"ok", vd.ok}};
        out << j.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        out << "index,re,im,modulus,residual\n";
        for (std::size_t i = 0; i < rs.roots.size(); ++i)
            out << i << "," << f17(rs.roots[i].real()) << "," << f17(rs.roots[i].imag())
                << "," << f17(std::abs(rs.roots[i])) << "," << f17(rs.residuals[i]) << "\n";
    } else {
        out << "roots of P_" << N->get_str() << " (" << collatz::variant_name(p.variant)
            << "), sorted by modulus:\n";
        for (const auto& z : rs.roots)
            out << "  (" << f4(z.real()) << ", " << f4(z.imag())
                << ")  |z| = " << f4(std::abs(z)) << "\n";
        out << "converged: " << (rs.converged ? "yes" : "no")
            << ", sweeps: " << rs.iterations << "\n";
    }
    return rs.converged ? kOk : kNumericFailure;
}

// --------------------------------------------------------------- report ----

int cmd_report(const Config& cfg, std::ostream& out, const std::string& n_str) {
    auto N = parse_positive(n_str);
    if (!N) return usage_error("report: N must be a positive integer");
    if (*N == 1) {
        if (cfg.format == "json")
            out << nlohmann::json{{"N", "1"}, {"degree", 0},
                                  {"notice", "degree 0; no roots"}}.dump(2)
                << "\n";
        else
            out << "P_1 has degree 0; no roots or bounds to report.\n";
        return kOk;
    }
    collatz::BoundReport rep = collatz::bound_report(*N, cfg.variant, cfg.max_steps);
    collatz::CollatzPolynomial p = collatz::build(*N, cfg.variant, cfg.max_steps);
    collatz::RootSet rs = collatz::find_roots(p, root_options(cfg));
    collatz::attach_root_moduli(rep, rs.max_modulus, rs.min_modulus);
    std::vector<std::string> violations = collatz::containment_violations(rep);

    if (cfg.format == "json") {
        nlohmann::json j{{"report", collatz::to_json(rep)}, {"roots", collatz::to_json(rs)}};
        out << j.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        out << "N,variant,degree,base,h_t,alt_bound,u_2,u_3,u_4,u_base_plus_3,"
               "fujiwara_modified,fujiwara_classical,sun_hsieh,lower,max_modulus,"
               "min_modulus,violation_count\n";
        out << rep.number.get_str() << "," << collatz::variant_name(rep.variant) << ","
            << rep.degree << "," << rep.base << ","
            << (rep.h_t ? f17(*rep.h_t) : std::string()) << ","
            << (rep.alt_bound ? f17(*rep.alt_bound) : std::string()) << ","
            << f17(rep.u_m.at(2)) << "," << f17(rep.u_m.at(3)) << ","
            << f17(rep.u_m.at(4)) << "," << f17(rep.u_m.at(rep.base + 3)) << ","
            << f17(rep.fujiwara_modified) << "," << f17(rep.fujiwara_classical) << ","
            << (rep.sun_hsieh_bound ? f17(*rep.sun_hsieh_bound) : std::string()) << ","
            << f17(rep.lower) << "," << f17(rs.max_modulus) << "," << f17(rs.min_modulus)
            << "," << violations.size() << "\n";
    } else {
        out << "N: " << rep.number.get_str() << "\n"
            << "variant: " << collatz::variant_name(rep.variant) << "\n"
            << "degree: " << rep.degree << ", base: " << rep.base << "\n"
            << "bounds on root moduli:\n";
        if (rep.h_t) {
            out << "  h(t)                 = " << f4(*rep.h_t);
            if (!rep.h_proven) out << "   (derivation assumes t >= 3)";
            out << "\n";
        }
        if (rep.alt_bound) out << "  alternative bound    = " << f4(*rep.alt_bound) << "\n";
        for (const auto& [m, u] : rep.u_m) {
            std::string label = "U_" + std::to_string(m);
            label.resize(21, ' ');
            out << "  " << label << "= " << f4(u) << "\n";
        }
        out << "  fujiwara (modified)  = " << f4(rep.fujiwara_modified) << "   [informational]\n"
            << "  fujiwara (classical) = " << f4(rep.fujiwara_classical) << "   [informational]\n";
        if (rep.sun_hsieh_bound) out << "  sun-hsieh            = " << f4(*rep.sun_hsieh_bound) << "\n";
        out << "  lower                = " << f4(rep.lower) << "\n"
            << "roots, sorted by modulus:\n";
        for (const auto& z : rs.roots)
            out << "  (" << f4(z.real()) << ", " << f4(z.imag())
                << ")  |z| = " << f4(std::abs(z)) << "\n";
        out << "max |z| = " << f4(rs.max_modulus) << ", min |z| = " << f4(rs.min_modulus)
            << "\n";
        if (violations.empty()) {
            out << "containment: PASS\n";
        } else {
            out << "containment: FAIL\n";
            for (const std::string& v : violations) out << "  " << v << "\n";
        }
        if (!rs.converged) out << "warning: root finder did not certify convergence\n";
    }
    if (!rs.converged) return kNumericFailure;
    return violations.empty() ? kOk : kClaimViolation;
}

// --------------------------------------------------------------- verify ----

struct SweepOutcome {
    std::uint64_t checked = 0;
    std::vector<std::string> violations;
    bool numeric_failure = false;
};

// Chunked parallel sweep over [lo, hi]; per-chunk outputs merged in chunk
// order so results are independent of the worker count.
template <typename Fn>
SweepOutcome sweep_range(std::uint64_t lo, std::uint64_t hi, std::int64_t workers, Fn per_n) {
    constexpr std::uint64_t chunk_size = 1024;
    const std::uint64_t chunks = (hi - lo) / chunk_size + 1;
    struct Local {
        std::vector<std::string> violations;
        bool numeric = false;
    };
    std::vector<Local> locals(static_cast<std::size_t>(chunks));
    std::atomic<std::uint64_t> next{0};
    auto run = [&]() {
        while (true) {
            std::uint64_t c = next.fetch_add(1);
            if (c >= chunks) break;
            std::uint64_t begin = lo + c * chunk_size;
            std::uint64_t end = std::min(hi, begin + chunk_size - 1);
            Local& local = locals[static_cast<std::size_t>(c)];
            for (std::uint64_t n = begin; n <= end; ++n) {
                try {
                    per_n(n, local.violations, local.numeric);
                } catch (const std::exception& e) {
                    local.violations.push_back("N=" + std::to_string(n) + " error: " + e.what());
                    local.numeric = true;
                }
            }
        }
    };
    if (workers <= 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        for (std::int64_t w = 0; w < workers; ++w) pool.emplace_back(run);
        for (std::thread& t : pool) t.join();
    }
    SweepOutcome out;
    out.checked = hi - lo + 1;
    for (Local& l : locals) {
        out.violations.insert(out.violations.end(), l.violations.begin(), l.violations.end());
        out.numeric_failure = out.numeric_failure || l.numeric;
    }
    return out;
}

int render_suite(const Config& cfg, std::ostream& out, const std::string& suite,
                 std::uint64_t hi, const SweepOutcome& res) {
    if (cfg.format == "json") {
        out << nlohmann::json{{"suite", suite},
                              {"hi", hi},
                              {"checked", res.checked},
                              {"violation_count", res.violations.size()},
                              {"violations", res.violations},
                              {"numeric_failure", res.numeric_failure}}
                   .dump(2)
            << "\n";
    } else if (cfg.format == "csv") {
        out << "suite,hi,checked,violation_count,numeric_failure\n"
            << suite << "," << hi << "," << res.checked << "," << res.violations.size()
            << "," << (res.numeric_failure ? 1 : 0) << "\n";
    } else {
        out << "suite: " << suite << "\nrange: [2, " << hi << "]\nchecked: " << res.checked
            << "\nviolations: " << res.violations.size() << "\n";
        for (const std::string& v : res.violations) out << "  " << v << "\n";
        if (res.numeric_failure) out << "warning: numeric failures occurred\n";
    }
    if (res.numeric_failure) return kNumericFailure;
    return res.violations.empty() ? kOk : kClaimViolation;
}

int cmd_verify(const Config& cfg, std::ostream& out, const std::string& suite,
               std::uint64_t hi) {
    SweepOutcome res;
    if (suite == "parity") {
        res = sweep_range(2, hi, cfg.workers,
                          [&](std::uint64_t n, std::vector<std::string>& viol, bool&) {
                              auto f = collatz::integer_root_flags(mpz_class(static_cast<unsigned long>(n)),
                                                                   cfg.max_steps);
                              if (f.root_at_minus_one && f.odd_count % 2 != 0)
                                  viol.push_back("N=" + std::to_string(n) +
                                                 ": P(-1)=0 with odd m");
                          });
    } else if (suite == "minus-two-equivalence") {
        res = sweep_range(2, hi, cfg.workers,
                          [&](std::uint64_t n, std::vector<std::string>& viol, bool&) {
                              auto f = collatz::integer_root_flags(mpz_class(static_cast<unsigned long>(n)),
                                                                   cfg.max_steps);
                              if (f.root_at_minus_two != f.all_segments_even)
                                  viol.push_back("N=" + std::to_string(n) +
                                                 ": P(-2)=0 and segment parity disagree");
                          });
    } else if (suite == "negoneroot") {
        for (std::int64_t t = 3;; t += 2) {
            mpz_class n = collatz::negoneroot_candidate(t);
            if (n > static_cast<unsigned long>(hi)) break;
            ++res.checked;
            if (!collatz::verify_negoneroot(t, cfg.max_steps))
                res.violations.push_back("t=" + std::to_string(t) + ": P(-1) != 0");
        }
    } else if (suite == "nonreal") {
        res = sweep_range(3, hi, cfg.workers,
                          [&](std::uint64_t n, std::vector<std::string>& viol, bool& numeric) {
                              auto p = collatz::build(mpz_class(static_cast<unsigned long>(n)),
                                                      collatz::Variant::Standard, cfg.max_steps);
                              auto rs = collatz::find_roots(p, root_options(cfg));
                              if (!rs.converged) numeric = true;
                              if (!collatz::has_nonreal_root(rs))
                                  viol.push_back("N=" + std::to_string(n) + ": all roots real");
                          });
    } else if (suite == "bounds-containment") {
        res = sweep_range(2, hi, cfg.workers,
                          [&](std::uint64_t n, std::vector<std::string>& viol, bool& numeric) {
                              mpz_class N(static_cast<unsigned long>(n));
                              auto rep = collatz::bound_report(N, cfg.variant, cfg.max_steps);
                              auto p = collatz::build(N, cfg.variant, cfg.max_steps);
                              auto rs = collatz::find_roots(p, root_options(cfg));
                              if (!rs.converged) numeric = true;
                              collatz::attach_root_moduli(rep, rs.max_modulus, rs.min_modulus);
                              for (const std::string& v : collatz::containment_violations(rep))
                                  viol.push_back("N=" + std::to_string(n) + ": " + v);
                          });
    } else {
        return usage_error("verify: unknown suite " + suite);
    }
    return render_suite(cfg, out, suite, hi, res);
}

// --------------------------------------------------------------- search ----

int cmd_search(const Config& cfg, std::ostream& out, const std::string& pred_name,
               std::uint64_t lo, std::uint64_t hi, std::optional<std::uint64_t> from) {
    collatz::SearchPredicate pred;
    if (pred_name == "minus-one") pred = collatz::SearchPredicate::MinusOneRoot;
    else if (pred_name == "minus-two") pred = collatz::SearchPredicate::MinusTwoRoot;
    else if (pred_name == "even-minus-one") pred = collatz::SearchPredicate::EvenWithMinusOneRoot;
    else return usage_error("search: unknown predicate " + pred_name);
    if (hi < lo) return usage_error("search: empty range (hi < lo)");

    std::uint64_t effective_lo = lo;
    if (from && *from > effective_lo) effective_lo = *from;

    const bool json = cfg.format == "json";
    const bool csv = cfg.format == "csv";
    if (csv) out << "hit\n";

    collatz::SearchResult res;
    if (effective_lo <= hi) {
        res = collatz::search(effective_lo, hi, pred, cfg.workers, cfg.max_steps,
                              [&](std::uint64_t h) {
                                  if (json) out << nlohmann::json{{"hit", h}}.dump() << "\n";
                                  else out << h << "\n";
                              });
    }
    const std::uint64_t next = hi + 1;
    if (json) {
        nlohmann::json summary{{"predicate", pred_name},
                               {"lo", effective_lo},
                               {"hi", hi},
                               {"scanned", res.scanned},
                               {"hit_count", res.hits.size()},
                               {"skipped", res.skipped},
                               {"next", next}};
        out << nlohmann::json{{"summary", std::move(summary)}}.dump() << "\n";
    } else if (csv) {
        std::cerr << "scanned=" << res.scanned << " hits=" << res.hits.size()
                  << " skipped=" << res.skipped.size() << " next=" << next << "\n";
    } else {
        out << "scanned=" << res.scanned << " hits=" << res.hits.size()
            << " skipped=" << res.skipped.size() << " next=" << next << "\n";
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Collatz polynomial toolkit: trajectories, root-modulus bounds, root sets,\n"
                 "and exact integer-root analysis"};
    app.require_subcommand(1);

    Config cfg;
    std::string variant_str = "standard";
    app.add_option("--variant", variant_str, "polynomial variant")
        ->check(CLI::IsMember({"standard", "alt"}))
        ->envname("COLLATZ_VARIANT")
        ->capture_default_str();
    app.add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->envname("COLLATZ_FORMAT")
        ->capture_default_str();
    app.add_option("--workers", cfg.workers, "parallel workers for search/verify")
        ->check(CLI::PositiveNumber)
        ->envname("COLLATZ_WORKERS")
        ->capture_default_str();
    app.add_option("--max-steps", cfg.max_steps, "trajectory step budget")
        ->check(CLI::PositiveNumber)
        ->envname("COLLATZ_MAX_STEPS")
        ->capture_default_str();
    app.add_option("--tol-root", cfg.tol_root, "root residual certification tolerance")
        ->check(CLI::PositiveNumber)
        ->envname("COLLATZ_TOL_ROOT")
        ->capture_default_str();
    app.add_option("--output", cfg.output_path, "write results to this file instead of stdout")
        ->envname("COLLATZ_OUTPUT");
    app.add_flag("--timings", cfg.timings, "report elapsed wall time on stderr")
        ->envname("COLLATZ_TIMINGS");

    auto* sc_table = app.add_subcommand("table", "closed-form upper bound h at chosen bases");
    std::vector<std::int64_t> t_values;
    sc_table->add_option("t", t_values, "base values (default: 3 10 1000 100000 10000000)");

    auto* sc_report = app.add_subcommand("report", "all bounds and all roots of P_N, with containment check");
    std::string report_n;
    sc_report->add_option("N", report_n, "index of the polynomial")->required();

    auto* sc_verify = app.add_subcommand("verify", "run an invariant suite over [2, hi]");
    std::string suite;
    std::uint64_t verify_hi = 0;
    sc_verify->add_option("suite", suite, "one of: nonreal, minus-two-equivalence, parity, negoneroot, bounds-containment")
        ->required()
        ->check(CLI::IsMember({"nonreal", "minus-two-equivalence", "parity", "negoneroot",
                               "bounds-containment"}));
    sc_verify->add_option("hi", verify_hi, "upper end of the range")
        ->required()
        ->check(CLI::Range(std::uint64_t{3}, std::uint64_t{1} << 62));

    auto* sc_search = app.add_subcommand("search", "scan [lo, hi] for integer-root hits");
    std::string pred_name;
    std::uint64_t search_lo = 0, search_hi = 0, search_from = 0;
    sc_search->add_option("predicate", pred_name, "one of: minus-one, minus-two, even-minus-one")
        ->required()
        ->check(CLI::IsMember({"minus-one", "minus-two", "even-minus-one"}));
    sc_search->add_option("lo", search_lo, "range start (>= 1)")
        ->required()
        ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 62));
    sc_search->add_option("hi", search_hi, "range end (inclusive)")->required();
    auto* from_opt = sc_search->add_option("--from", search_from,
                                           "resume checkpoint: skip numbers below this");

    auto* sc_roots = app.add_subcommand("roots", "all roots of P_N with residuals");
    std::string roots_n;
    sc_roots->add_option("N", roots_n, "index of the polynomial")->required();

    auto* sc_poly = app.add_subcommand("poly", "coefficients of P_N");
    std::string poly_n;
    sc_poly->add_option("N", poly_n, "index of the polynomial")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageError;
    }
    cfg.variant = collatz::variant_from_name(variant_str);

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!cfg.output_path.empty()) {
        file.open(cfg.output_path);
        if (!file) {
            std::cerr << "cannot open output file: " << cfg.output_path << "\n";
            return kNumericFailure;
        }
        out = &file;
    }

    auto start = std::chrono::steady_clock::now();
    int rc = kOk;
    try {
        if (*sc_table) {
            rc = cmd_table(cfg, *out, t_values);
        } else if (*sc_report) {
            rc = cmd_report(cfg, *out, report_n);
        } else if (*sc_verify) {
            rc = cmd_verify(cfg, *out, suite, verify_hi);
        } else if (*sc_search) {
            std::optional<std::uint64_t> from;
            if (from_opt->count() > 0) from = search_from;
            rc = cmd_search(cfg, *out, pred_name, search_lo, search_hi, from);
        } else if (*sc_roots) {
            rc = cmd_roots(cfg, *out, roots_n);
        } else if (*sc_poly) {
            rc = cmd_poly(cfg, *out, poly_n);
        }
    } catch (const collatz::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        rc = kNumericFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        rc = kNumericFailure;
    }
    if (cfg.timings) {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        std::cerr << "elapsed_ms " << ms << "\n";
    }
    out->flush();
    return rc;
}
