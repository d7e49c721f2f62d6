// Command-line driver: runs the Smallest Vector Algorithm on a cubic,
// rational, or decimal target and writes traces, metrics, loop certificates,
// and prism verdicts.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sva/engine.hpp"
#include "sva/geometry.hpp"
#include "sva/loop.hpp"
#include "sva/oracles.hpp"
#include "sva/trace.hpp"

namespace {

using namespace sva;

// Exit code taxonomy (documented in the README):
//   0 success, 2 validation/usage error, 3 precision exhaustion,
//   4 dependence found but not expected, 5 internal invariant violation.
enum ExitCode : int {
    kOk = 0,
    kValidation = 2,
    kPrecision = 3,
    kUnexpectedDependence = 4,
    kInternal = 5,
};

struct Config {
    std::string minpoly;
    int root = 0;
    std::string triple;
    std::string rational;
    std::string decimal;
    long steps = 5000;
    long prec = 256;
    bool loop = false;
    bool metrics = false;
    long prism = 0;
    bool expect_dependence = false;
    std::string out_dir = "out";
    std::string format = "jsonl";
    int digits = 25;
    std::string match_eps; // decimal string; default 2^-(prec/2)
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}

struct RunArtifacts {
    std::vector<TraceRecord> trace;
    StopReason reason = StopReason::max_steps;
    std::string stop_message;
    std::optional<DependenceCertificate> dependence;
    std::optional<LoopResult> loop;
    std::optional<MetricsSummary> metrics_summary;
    std::optional<MonotonicReport> monotonic;
    std::vector<std::pair<long, PrismVerdict>> prism;
    long states = 0;
};

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ValidationError("cannot open output file: " + path.string());
    os << content;
}

template <Scalar S>
RunArtifacts run_analyses(const Target<S>& target, const Config& cfg) {
    RunArtifacts art;

    // Engine epsilons stay at their 2^-(prec/2) defaults; --match-eps only
    // affects the loop-candidate fingerprints below.
    RunResult<S> run = run_sva(target, cfg.steps, EngineOptions{});
    art.reason = run.reason;
    art.stop_message = run.message;
    art.dependence = run.dependence;
    art.states = static_cast<long>(run.states.size());

    for (std::size_t i = 0; i < run.states.size(); ++i)
        art.trace.push_back(make_trace_record(run.states[i], run.steps[i], target, cfg.digits));

    if (cfg.metrics && !run.states.empty()) {
        std::array<BigReal, 3> xb;
        for (int i = 0; i < 3; ++i)
            xb[static_cast<std::size_t>(i)] =
                ScalarOps<S>::to_bigreal(target.x[static_cast<std::size_t>(i)], static_cast<mpfr_prec_t>(cfg.prec));
        MetricsCollector mc(xb, static_cast<mpfr_prec_t>(cfg.prec));
        for (const auto& st : run.states) mc.push(numeric_view(st, static_cast<mpfr_prec_t>(cfg.prec)));
        mc.finish();
        art.metrics_summary = mc.summary();
        art.monotonic = monotonic_subsequence_check(mc.records());

        std::filesystem::path dir(cfg.out_dir);
        std::ostringstream os;
        write_metrics_csv_header(os);
        for (const auto& r : mc.records()) write_metrics_csv(os, r, cfg.digits);
        write_file(dir / "metrics.csv", os.str());
        write_file(dir / "metrics_summary.json", metrics_summary_to_json(mc.summary(), cfg.digits));
    }

    if (cfg.loop && !run.states.empty()) {
        if constexpr (std::is_same_v<S, CubicFieldElement>) {
            LoopScanner<CubicFieldElement> scanner;
            std::optional<LoopHit> hit;
            for (const auto& st : run.states) {
                auto h = scanner.add(st);
                if (h && !hit) hit = h;
            }
            if (hit) {
                LoopResult loop = extract_lambda(run.states[static_cast<std::size_t>(hit->s)],
                                                 run.states[static_cast<std::size_t>(hit->s + hit->p)],
                                                 cfg.digits);
                recover_ratios(loop, run.states[static_cast<std::size_t>(hit->s)].B);
                art.loop = std::move(loop);
            }
        } else if constexpr (std::is_same_v<S, BigReal>) {
            BigReal eps = cfg.match_eps.empty()
                              ? BigReal::pow2(-cfg.prec / 2, static_cast<mpfr_prec_t>(cfg.prec))
                              : BigReal::from_rational(parse_rational(cfg.match_eps),
                                                       static_cast<mpfr_prec_t>(cfg.prec));
            LoopScanner<BigReal> scanner(eps);
            std::optional<LoopHit> hit;
            for (const auto& st : run.states) {
                auto h = scanner.add(st);
                if (h && !hit) hit = h;
            }
            if (hit) {
                LoopResult loop =
                    extract_lambda_candidate(run.states[static_cast<std::size_t>(hit->s)],
                                             run.states[static_cast<std::size_t>(hit->s + hit->p)], cfg.digits);
                recover_ratios(loop, run.states[static_cast<std::size_t>(hit->s)].B);
                art.loop = std::move(loop);
            }
        } else {
            // Rational targets are always dependent; a scan still runs on
            // exact keys, but no unit certification can apply.
            LoopScanner<Rational> scanner;
            for (const auto& st : run.states) (void)scanner.add(st);
        }
    }

    if (cfg.prism > 0) {
        PrismOptions popt;
        popt.prec = static_cast<mpfr_prec_t>(cfg.prec);
        std::vector<long> marks = {0, 5, 10, 20, 30};
        for (long s : marks) {
            if (s >= static_cast<long>(run.states.size())) break;
            art.prism.emplace_back(s, prism_check(run.states[static_cast<std::size_t>(s)], target,
                                                  cfg.prism, popt));
        }
    }
    return art;
}

int finish(const Config& cfg, const RunArtifacts& art) {
    std::filesystem::path dir(cfg.out_dir);

    std::ostringstream os;
    if (cfg.format == "csv") {
        write_trace_csv_header(os);
        for (const auto& r : art.trace) write_trace_csv(os, r);
        write_file(dir / "trace.csv", os.str());
    } else {
        for (const auto& r : art.trace) write_trace_jsonl(os, r);
        write_file(dir / "trace.jsonl", os.str());
    }

    if (art.loop) write_file(dir / "loop.json", loop_result_to_json(*art.loop));

    if (!art.prism.empty()) {
        nlohmann::json pj = nlohmann::json::array();
        for (const auto& [s, v] : art.prism) {
            nlohmann::json one = nlohmann::json::parse(prism_verdict_to_json(v));
            one["s"] = s;
            pj.push_back(one);
        }
        write_file(dir / "prism.json", pj.dump(2));
    }

    // Machine-readable summary, always written.
    nlohmann::json summary;
    summary["states"] = art.states;
    summary["stop_reason"] = art.reason == StopReason::max_steps    ? "max_steps"
                             : art.reason == StopReason::dependence ? "dependence"
                                                                    : "precision_exhausted";
    if (!art.stop_message.empty()) summary["stop_message"] = art.stop_message;
    if (art.dependence) {
        summary["dependence"] = {{"s", art.dependence->s},
                                 {"exact", art.dependence->exact},
                                 {"g0",
                                  {art.dependence->g0[0].get_str(), art.dependence->g0[1].get_str(),
                                   art.dependence->g0[2].get_str()}}};
    }
    if (art.loop) {
        summary["loop_found"] = true;
        summary["loop_s"] = art.loop->s;
        summary["loop_p"] = art.loop->p;
        summary["loop_certified"] = art.loop->certified;
    } else if (cfg.loop) {
        summary["loop_found"] = false;
    }
    if (art.metrics_summary) summary["t_count"] = art.metrics_summary->t_count;
    if (art.monotonic) summary["monotonic_consistent"] = art.monotonic->consistent;
    bool prism_pass = true;
    for (const auto& [s, v] : art.prism) prism_pass = prism_pass && v.pass();
    if (!art.prism.empty()) summary["prism_pass"] = prism_pass;
    write_file(dir / "summary.json", summary.dump(2));

    if (art.reason == StopReason::precision_exhausted) {
        std::cerr << "precision exhausted: " << art.stop_message << "\n";
        return kPrecision;
    }
    if (art.dependence && !cfg.expect_dependence) {
        std::cerr << "rational dependence found at step " << art.dependence->s
                  << " (pass --dependence to accept)\n";
        return kUnexpectedDependence;
    }
    if (!art.prism.empty() && !prism_pass) {
        std::cerr << "prism oracle reported a violation\n";
        return kInternal;
    }
    return kOk;
}

int run_cli_inner(const Config& cfg) {
    if (cfg.steps < 1) throw ValidationError("--steps must be >= 1");
    if (cfg.prec < 64) throw ValidationError("--prec must be >= 64");
    if (cfg.digits < 1 || static_cast<double>(cfg.digits) > static_cast<double>(cfg.prec) * 0.30103)
        throw ValidationError("--digits must fit the precision (digits <= prec*log10(2))");

    int provided = (!cfg.minpoly.empty() ? 1 : 0) + (!cfg.rational.empty() ? 1 : 0) +
                   (!cfg.decimal.empty() ? 1 : 0);
    if (provided != 1)
        throw ValidationError("exactly one of --minpoly/--triple, --rational, --decimal is required");

    if (!cfg.minpoly.empty()) {
        std::vector<std::string> abc = split(cfg.minpoly, ',');
        if (abc.size() != 3) throw ValidationError("--minpoly expects a,b,c");
        if (cfg.triple.empty()) throw ValidationError("cubic mode requires --triple \"e0;e1;e2\"");
        std::vector<std::string> elems = split(cfg.triple, ';');
        if (elems.size() != 3) throw ValidationError("--triple expects three elements separated by ;");
        CubicFieldPtr field = CubicField::make(parse_rational(abc[0]), parse_rational(abc[1]),
                                               parse_rational(abc[2]), cfg.root);
        Target<CubicFieldElement> target({parse_element(field, elems[0]), parse_element(field, elems[1]),
                                          parse_element(field, elems[2])});
        return finish(cfg, run_analyses(target, cfg));
    }
    if (!cfg.rational.empty()) {
        std::vector<std::string> xs = split(cfg.rational, ',');
        if (xs.size() != 3) throw ValidationError("--rational expects x0,x1,x2");
        Target<Rational> target({parse_rational(xs[0]), parse_rational(xs[1]), parse_rational(xs[2])});
        return finish(cfg, run_analyses(target, cfg));
    }
    std::vector<std::string> xs = split(cfg.decimal, ',');
    if (xs.size() != 3) throw ValidationError("--decimal expects d0,d1,d2");
    // Decimal strings denote exact rationals, then embed at the working
    // precision; "the number the user typed" is reproducible.
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(cfg.prec);
    Target<BigReal> target({BigReal::from_rational(parse_rational(xs[0]), prec),
                            BigReal::from_rational(parse_rational(xs[1]), prec),
                            BigReal::from_rational(parse_rational(xs[2]), prec)});
    return finish(cfg, run_analyses(target, cfg));
}

// The summary file is written even when the run fails.
int run_cli(const Config& cfg) {
    std::filesystem::create_directories(cfg.out_dir);
    try {
        return run_cli_inner(cfg);
    } catch (const std::exception& e) {
        nlohmann::json summary;
        summary["error"] = e.what();
        write_file(std::filesystem::path(cfg.out_dir) / "summary.json", summary.dump(2));
        throw;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Smallest Vector Algorithm driver"};
    Config cfg;

    app.add_option("--minpoly", cfg.minpoly, "cubic r^3 - a r^2 - b r - c as \"a,b,c\"");
    app.add_option("--root", cfg.root, "index of the real root, ascending (default 0)");
    app.add_option("--triple", cfg.triple,
                   "three field elements \"e0;e1;e2\", each like \"1/2 + r - 3*r^2\"");
    app.add_option("--rational", cfg.rational, "exact rational target \"x0,x1,x2\"");
    app.add_option("--decimal", cfg.decimal, "decimal target \"d0,d1,d2\" at --prec bits");
    app.add_option("--steps", cfg.steps, "maximum number of steps (default 5000)");
    app.add_option("--prec", cfg.prec, "working precision in bits (default 256)");
    app.add_flag("--loop", cfg.loop, "scan for Lagrange loops and certify the unit");
    app.add_flag("--metrics", cfg.metrics, "emit per-step geometry metrics");
    app.add_option("--prism", cfg.prism,
                   "run the prism oracle with this box bound at steps 0,5,10,20,30");
    app.add_flag("--dependence,--expect-dependence", cfg.expect_dependence,
                 "treat a dependence certificate as success");
    app.add_option("--out", cfg.out_dir, "output directory (default ./out)");
    app.add_option("--format", cfg.format, "trace format: jsonl (default) or csv")
        ->check(CLI::IsMember({"jsonl", "csv"}));
    app.add_option("--digits", cfg.digits, "rendered significant digits (default 25)");
    app.add_option("--match-eps", cfg.match_eps, "loop-candidate matching epsilon (bigreal mode)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kValidation;
    }

    try {
        return run_cli(cfg);
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kValidation;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kValidation;
    } catch (const PrecisionExhausted& e) {
        std::cerr << "precision exhausted: " << e.what() << "\n";
        return kPrecision;
    } catch (const InvariantViolation& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return kInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInternal;
    }
}
