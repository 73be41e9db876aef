// progmom: moments and limit-law experiments for additive arithmetic
// functions over arithmetic progressions.
//
// Subcommands:
//   moments   exact empirical moments vs prime-sum predictions
//   simulate  the two-valued model S_n, exact vs Monte Carlo
//   limits    condition profile, K(u), and KS comparisons
#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "progmom/empirical.hpp"
#include "progmom/functions.hpp"
#include "progmom/limitlaws.hpp"
#include "progmom/model.hpp"
#include "progmom/predictor.hpp"
#include "progmom/primes.hpp"
#include "progmom/report_io.hpp"

namespace {

using namespace progmom;

struct CliError {
    int exit_code;
    std::string code;
    std::string field;
    std::string message;
};

void print_error(const CliError& e) {
    JsonWriter w;
    w.begin_object().key("error").begin_object().field("code", e.code);
    if (!e.field.empty()) w.field("field", e.field);
    w.field("message", e.message).end_object().end_object();
    std::cerr << w.str() << "\n";
}

struct CommonOptions {
    std::string fn;
    std::string rule;
    std::string kind;
    std::uint64_t k = 1;
    std::uint64_t l = 1;
    std::uint64_t n = 0;
    std::string params_text;
    std::string out_dir = ".";
    std::string cache_dir;
    std::string config_path;
    unsigned threads = 0;
    std::uint64_t segment_size = 1ull << 18;
    std::uint64_t sample_cap = 1ull << 22;

    bool l_given = false;
    std::optional<KolmogorovParams> params;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--fn", opt.fn, "Function: built-in name, kolmogorov_example, or a name for --rule");
    cmd->add_option("--rule", opt.rule, "Prime-power rule expression over p and a, e.g. \"ln(1 - 1/p)\"");
    cmd->add_option("--kind", opt.kind, "Rule kind: additive | strongly_additive")
        ->check(CLI::IsMember({"additive", "strongly_additive"}));
    cmd->add_option("--k", opt.k, "Progression modulus")->capture_default_str();
    cmd->add_option("--l", opt.l, "Progression residue, 1 <= l <= k");
    cmd->add_option("--n", opt.n, "Upper bound of the progression")->required();
    cmd->add_option("--params", opt.params_text, "Limit-law constants, e.g. A=-1,C=1,mu=0.3,nu=0.3");
    cmd->add_option("--out", opt.out_dir, "Output directory")->capture_default_str();
    cmd->add_option("--cache-dir", opt.cache_dir, "Prime cache directory (default: $PROGMOM_CACHE_DIR)");
    cmd->add_option("--threads", opt.threads, "Worker threads (0 = auto; results identical either way)")
        ->capture_default_str();
    cmd->add_option("--segment-size", opt.segment_size, "Progression members per processing segment")
        ->capture_default_str();
    cmd->add_option("--sample-cap", opt.sample_cap,
                    "Largest sample kept exactly; larger runs switch to the fixed histogram")
        ->capture_default_str();
    cmd->add_option("--config", opt.config_path,
                    "Flat key=value config file; command-line flags win over file values");
}

// Expands "--config FILE" into the equivalent flags, appended after the
// given arguments so explicit flags keep precedence (CLI11 rejects a
// repeated non-vector option, so file values for flags already present
// are skipped).
std::vector<std::string> apply_config_file(const std::vector<std::string>& args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size())
            path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0)
            path = args[i].substr(9);
    }
    if (path.empty()) return args;

    std::ifstream in(path);
    if (!in) throw CliError{2, "config", "config", "cannot open config file: " + path};
    std::vector<std::string> out = args;
    std::string line;
    while (std::getline(in, line)) {
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        if (line[start] == '#' || line[start] == ';') continue;
        std::size_t eq = line.find('=', start);
        if (eq == std::string::npos)
            throw CliError{2, "config", "config", "bad config line (need key=value): " + line};
        std::string key = line.substr(start, eq - start);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
        std::string value = line.substr(eq + 1);
        std::size_t vstart = value.find_first_not_of(" \t");
        value = vstart == std::string::npos ? "" : value.substr(vstart);
        if (key.empty() || key == "config")
            throw CliError{2, "config", "config", "bad config key in line: " + line};
        std::string flag = "--" + key;
        bool given = false;
        for (const auto& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) given = true;
        if (!given) out.push_back(flag + "=" + value);
    }
    return out;
}

KolmogorovParams parse_params(const std::string& text) {
    KolmogorovParams params;
    bool a = false, c = false, mu = false, nu = false;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t next = text.find(',', pos);
        if (next == std::string::npos) next = text.size();
        std::string item = text.substr(pos, next - pos);
        std::size_t eq = item.find('=');
        if (eq == std::string::npos) throw ParameterError("bad --params item: " + item);
        std::string key = item.substr(0, eq);
        double value = std::stod(item.substr(eq + 1));
        if (key == "A") {
            params.A = value;
            a = true;
        } else if (key == "C") {
            params.C = value;
            c = true;
        } else if (key == "mu") {
            params.mu = value;
            mu = true;
        } else if (key == "nu") {
            params.nu = value;
            nu = true;
        } else {
            throw ParameterError("unknown --params key: " + key);
        }
        pos = next + 1;
    }
    if (!(a && c && mu && nu)) throw ParameterError("--params requires A, C, mu and nu");
    params.validate();
    return params;
}

void finish_common(const CLI::App* cmd, CommonOptions& opt) {
    opt.l_given = cmd->count("--l") > 0;
    if (opt.k > 1 && !opt.l_given)
        throw CliError{2, "config", "l", "--l is required when --k > 1"};
    if (!opt.l_given) opt.l = 1;
    if (opt.cache_dir.empty()) {
        if (const char* env = std::getenv("PROGMOM_CACHE_DIR")) opt.cache_dir = env;
    }
    if (!opt.params_text.empty()) {
        try {
            opt.params = parse_params(opt.params_text);
        } catch (const std::exception& e) {
            throw CliError{2, "config", "params", e.what()};
        }
    }
    try {
        ProgressionSpec{opt.k, opt.l, opt.n}.validate();
    } catch (const EmptyDomainError& e) {
        throw CliError{2, "config", "n", e.what()};
    } catch (const Error& e) {
        throw CliError{2, "config", "l", e.what()};
    }
    if (opt.fn.empty() && opt.rule.empty())
        throw CliError{2, "config", "fn", "--fn (or --rule) is required"};
    if (!opt.rule.empty() && opt.kind.empty())
        throw CliError{2, "config", "kind", "--kind is required with --rule"};
    std::filesystem::create_directories(opt.out_dir);
}

ProgressionSpec spec_of(const CommonOptions& opt) { return {opt.k, opt.l, opt.n}; }

EvalContext context_of(const CommonOptions& opt) {
    EvalContext ctx;
    ctx.chunk_members = opt.segment_size;
    ctx.threads = opt.threads;
    ctx.sample_cap = opt.sample_cap;
    return ctx;
}

PrimeSet acquire_primes(const CommonOptions& opt) {
    if (opt.cache_dir.empty()) return primes_up_to(opt.n);
    std::filesystem::path dir(opt.cache_dir);
    std::filesystem::create_directories(dir);
    auto path = (dir / ("primes_" + std::to_string(opt.n) + ".pmps")).string();
    try {
        return load_prime_cache(path, opt.n);
    } catch (const CacheError&) {
        PrimeSet ps = primes_up_to(opt.n);
        try {
            save_prime_cache(ps, path);
        } catch (const CacheError&) {
            // cache is best-effort
        }
        return ps;
    }
}

// Resolves --fn / --rule to a concrete function; kolmogorov_example needs
// params and a prime set to realize its classes over.
AdditiveFunction resolve_function(const CommonOptions& opt, const PrimeSet* primes) {
    if (!opt.rule.empty()) {
        std::string name = opt.fn.empty() ? "user" : opt.fn;
        try {
            return make_user_function(name, opt.kind == "strongly_additive", opt.rule);
        } catch (const ParameterError& e) {
            throw CliError{2, "config", "rule", e.what()};
        }
    }
    if (opt.fn == "kolmogorov_example") {
        if (!opt.params)
            throw CliError{2, "config", "params", "--params is required for kolmogorov_example"};
        auto shared = std::make_shared<PrimeSet>(*primes);
        auto assignment = build_prime_classes(shared, *opt.params, opt.k);
        return kolmogorov_example_function(*opt.params, std::move(assignment));
    }
    try {
        return builtin(opt.fn);
    } catch (const LookupError& e) {
        throw CliError{2, "config", "fn", e.what()};
    }
}

std::string out_path(const CommonOptions& opt, const std::string& name) {
    return (std::filesystem::path(opt.out_dir) / name).string();
}

// --- moments -----------------------------------------------------------------

struct MomentsOptions {
    CommonOptions common;
    unsigned orders = 4;
    std::string mode = "both";
    double sup_bound = 16.0;
    double tail_tol = 1e-3;
};

int run_moments(const MomentsOptions& opt) {
    PrimeSet primes = acquire_primes(opt.common);
    AdditiveFunction f = resolve_function(opt.common, &primes);
    ProgressionSpec spec = spec_of(opt.common);

    MomentReport report = empirical_moments(f, spec, opt.orders, context_of(opt.common));

    std::vector<PredictedMoments> predictions;
    if (opt.mode == "both" || opt.mode == "paper")
        predictions.push_back(moment_sums(f, spec, PrimeSumMode::PaperProgression, opt.orders, primes));
    if (opt.mode == "both" || opt.mode == "divisor")
        predictions.push_back(moment_sums(f, spec, PrimeSumMode::DivisorDensity, opt.orders, primes));

    BoundedMomentReport bounded =
        bounded_moment_check(f, spec, primes, opt.sup_bound, opt.tail_tol);

    write_text_file(out_path(opt.common, "moments.json"), moment_report_json(report));
    write_text_file(out_path(opt.common, "moments.csv"), moment_report_csv(report));
    for (const auto& pred : predictions)
        write_text_file(out_path(opt.common, std::string("predicted_") + to_string(pred.mode) + ".json"),
                        predicted_moments_json(pred));
    write_text_file(out_path(opt.common, "comparison.json"),
                    comparison_json(report, predictions, &bounded));

    std::cout << "moments: fn=" << f.name << " k=" << spec.k << " l=" << spec.l << " n=" << spec.n
              << " count=" << report.count << "\n";
    std::cout << "mean=" << format_double(report.mean)
              << " variance=" << format_double(report.variance()) << "\n";
    for (const auto& pred : predictions)
        std::cout << to_string(pred.mode) << " S_1=" << format_double(pred.sums[0])
                  << " S_2=" << format_double(pred.sums[1]) << " B=" << format_double(pred.B) << "\n";
    std::cout << "bounded_evidence=" << (bounded.bounded_evidence ? "true" : "false") << "\n";
    return 0;
}

// --- simulate ----------------------------------------------------------------

struct SimulateOptions {
    CommonOptions common;
    unsigned orders = 4;
    std::string mode = "paper";
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::uint64_t export_samples = 0;
};

int run_simulate(const SimulateOptions& opt) {
    PrimeSet primes = acquire_primes(opt.common);
    AdditiveFunction f = resolve_function(opt.common, &primes);
    ProgressionSpec spec = spec_of(opt.common);
    PrimeSumMode mode =
        opt.mode == "divisor" ? PrimeSumMode::DivisorDensity : PrimeSumMode::PaperProgression;

    TwoValuedModel model = build_model(f, primes, spec, mode);
    SimulationResult sim = simulate(model, opt.trials, opt.seed, opt.orders, opt.common.threads);

    write_text_file(out_path(opt.common, "simulation.json"), simulation_json(sim, model));
    if (opt.export_samples > 0)
        write_text_file(out_path(opt.common, "samples.csv"), samples_csv(sim, opt.export_samples));

    std::cout << "simulate: fn=" << f.name << " entries=" << model.entries.size()
              << " trials=" << sim.trials << " seed=" << sim.seed << "\n";
    std::cout << "exact mean=" << format_double(sim.exact.mean)
              << " variance=" << format_double(sim.exact.variance) << "\n";
    std::cout << "sample mean=" << format_double(sim.sample.mean)
              << " variance=" << format_double(sim.sample.variance) << "\n";
    return 0;
}

// --- limits ------------------------------------------------------------------

struct LimitsOptions {
    CommonOptions common;
    std::string vs = "normal";
    std::string mode = "paper";
    double grid_lo = 0.0;
    double grid_hi = 0.0;
    unsigned grid_points = 0;
    bool export_histogram = false;
};

int run_limits(const LimitsOptions& opt) {
    PrimeSet primes = acquire_primes(opt.common);
    AdditiveFunction f = resolve_function(opt.common, &primes);
    ProgressionSpec spec = spec_of(opt.common);
    PrimeSumMode mode =
        opt.mode == "divisor" ? PrimeSumMode::DivisorDensity : PrimeSumMode::PaperProgression;

    if (opt.vs == "normal" || opt.vs == "both") {
        EmpiricalDistribution dist = normalized_cdf(f, spec, context_of(opt.common));
        double distance = ks_distance(dist, normal_cdf);
        write_text_file(out_path(opt.common, "ks_normal.json"),
                        ks_report_json(spec.n, dist.size, distance, "normal", dist.binning_slack));
        if (opt.export_histogram)
            write_text_file(out_path(opt.common, "histogram.csv"), histogram_csv(dist));
        std::cout << "ks vs normal: n=" << spec.n << " distance=" << format_double(distance) << "\n";
    }
    if (opt.vs == "kfun" || opt.vs == "both") {
        if (!opt.common.params)
            throw CliError{2, "config", "params", "--vs kfun requires --params"};
        KolmogorovFunction kf{*opt.common.params};
        std::vector<double> grid;
        if (opt.grid_points > 1) {
            grid.reserve(opt.grid_points);
            for (unsigned i = 0; i < opt.grid_points; ++i)
                grid.push_back(opt.grid_lo + (opt.grid_hi - opt.grid_lo) * static_cast<double>(i) /
                                                 static_cast<double>(opt.grid_points - 1));
        }
        ConditionProfile profile = condition_profile(f, spec, mode, primes, std::move(grid));
        double sup = 0.0;
        for (std::size_t i = 0; i < profile.grid.size(); ++i)
            sup = std::max(sup, std::abs(profile.values[i] - kf(profile.grid[i])));
        std::uint64_t selected = 0;
        for (std::uint64_t p : primes.primes) {
            if (p > spec.n) break;
            bool in = mode == PrimeSumMode::PaperProgression ? p % spec.k == spec.l % spec.k
                                                             : spec.k % p != 0;
            if (in) ++selected;
        }
        write_text_file(out_path(opt.common, "profile.csv"), profile_csv(profile, kf));
        write_text_file(out_path(opt.common, "ks_kfun.json"),
                        ks_report_json(spec.n, selected, sup, "kolmogorov", 0.0));
        std::cout << "profile vs K: n=" << spec.n << " sup=" << format_double(sup)
                  << " D=" << format_double(profile.variance) << "\n";
    }
    return 0;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"moments and limit laws of additive functions over progressions"};
    app.require_subcommand(1);

    MomentsOptions mopt;
    auto* moments = app.add_subcommand("moments", "Empirical moments vs prime-sum predictions");
    add_common(moments, mopt.common);
    moments->add_option("--orders", mopt.orders, "Largest central-moment order (2..12)")
        ->capture_default_str()
        ->check(CLI::Range(2u, 12u));
    moments->add_option("--mode", mopt.mode, "Prime-sum mode: paper | divisor | both")
        ->capture_default_str()
        ->check(CLI::IsMember({"paper", "divisor", "both"}));
    moments->add_option("--sup-bound", mopt.sup_bound, "Bound for the |f(p)| sup check")
        ->capture_default_str();
    moments->add_option("--tail-tol", mopt.tail_tol, "Tolerance for the S_2 tail difference")
        ->capture_default_str();

    SimulateOptions sopt;
    auto* simulate_cmd = app.add_subcommand("simulate", "Two-valued model: exact vs Monte Carlo");
    add_common(simulate_cmd, sopt.common);
    simulate_cmd->add_option("--orders", sopt.orders, "Largest moment order (2..8)")
        ->capture_default_str()
        ->check(CLI::Range(2u, 8u));
    simulate_cmd->add_option("--mode", sopt.mode, "Prime-sum mode: paper | divisor")
        ->capture_default_str()
        ->check(CLI::IsMember({"paper", "divisor"}));
    simulate_cmd->add_option("--trials", sopt.trials, "Monte Carlo trials")->required();
    simulate_cmd->add_option("--seed", sopt.seed, "RNG seed")->required();
    simulate_cmd->add_option("--export-samples", sopt.export_samples,
                             "Write samples.csv with at most this many rows")
        ->capture_default_str();

    LimitsOptions lopt;
    auto* limits = app.add_subcommand("limits", "Condition profile, K(u) and KS reports");
    add_common(limits, lopt.common);
    limits->add_option("--vs", lopt.vs, "Reference law: normal | kfun | both")
        ->capture_default_str()
        ->check(CLI::IsMember({"normal", "kfun", "both"}));
    limits->add_option("--mode", lopt.mode, "Prime-sum mode: paper | divisor")
        ->capture_default_str()
        ->check(CLI::IsMember({"paper", "divisor"}));
    limits->add_option("--grid-lo", lopt.grid_lo, "Profile grid lower end");
    limits->add_option("--grid-hi", lopt.grid_hi, "Profile grid upper end");
    limits->add_option("--grid-points", lopt.grid_points, "Profile grid size (0 = automatic)");
    limits->add_flag("--export-histogram", lopt.export_histogram, "Write histogram.csv");

    std::vector<std::string> expanded;
    try {
        expanded = apply_config_file(std::vector<std::string>(argv + 1, argv + argc));
    } catch (const CliError& e) {
        print_error(e);
        return e.exit_code;
    }
    std::vector<const char*> cargs;
    cargs.push_back(argv[0]);
    for (const auto& s : expanded) cargs.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        print_error({2, "config", "", e.what()});
        return 2;
    }

    try {
        if (moments->parsed()) {
            finish_common(moments, mopt.common);
            return run_moments(mopt);
        }
        if (simulate_cmd->parsed()) {
            finish_common(simulate_cmd, sopt.common);
            return run_simulate(sopt);
        }
        finish_common(limits, lopt.common);
        return run_limits(lopt);
    } catch (const CliError& e) {
        print_error(e);
        return e.exit_code;
    } catch (const Error& e) {
        print_error({3, "compute", "", e.what()});
        return 3;
    } catch (const std::exception& e) {
        print_error({3, "compute", "", e.what()});
        return 3;
    }
}

}  // namespace

int main(int argc, char** argv) { return dispatch(argc, argv); }
