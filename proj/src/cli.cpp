#include "zi/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>

#include "zi/csv.hpp"
#include "zi/errors.hpp"
#include "zi/lemma_lab.hpp"
#include "zi/parallel.hpp"
#include "zi/pretentious.hpp"
#include "zi/sectorial.hpp"
#include "zi/shortint.hpp"
#include "zi/suite.hpp"

namespace zi::cli {

namespace {

struct RunConfig {
    double x_max = 0.0;
    std::uint64_t seed = 42;
    std::string theta1 = "0";
    std::string theta2 = "1/2";
    std::string m = "-4..4";
    int T = 8;
    i64 h = 0;
    std::string f = "mu";
    std::string range = "log";
    int threads = 0;
    std::string output;
    std::string calibration;
};

// Thrown for regressions against frozen constants.
struct RegressionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void log_stage(const std::string& msg) { std::cerr << "[gauss_halasz] " << msg << '\n'; }

MultFn named_function(const RunConfig& cfg) {
    if (cfg.f == "one") return constant_one();
    if (cfg.f == "mu") return mobius();
    if (cfg.f == "liouville") return MultFn{"liouville", [](const PrimeIdeal&, int) { return cplx{-1.0, 0.0}; }, true};
    if (cfg.f == "random") return random_multiplicative(cfg.seed);
    if (cfg.f == "random-nc") return random_multiplicative(cfg.seed, RandomValues::Sign, false);
    throw PreconditionError("--f must be one of one, mu, liouville, random, random-nc (got '" + cfg.f + "')");
}

Sector sector_of(const RunConfig& cfg) {
    return Sector::from_pi_fractions(parse_rational(cfg.theta1), parse_rational(cfg.theta2));
}

i64 integer_x(const RunConfig& cfg, double min_value, const char* name) {
    if (!(cfg.x_max >= min_value) || cfg.x_max != std::floor(cfg.x_max) || cfg.x_max > 4e9)
        throw PreconditionError(std::string("--x-max must be an integer >= ") + std::to_string(static_cast<i64>(min_value)) +
                                " for " + name);
    return static_cast<i64>(cfg.x_max);
}

// 10, 100, ... below x, then x itself.
std::vector<double> scale_points(double x) {
    std::vector<double> xs;
    for (double v = 10.0; v < x; v *= 10.0) xs.push_back(v);
    xs.push_back(x);
    return xs;
}

void emit(const CsvTable& table, const RunConfig& cfg) {
    if (cfg.output.empty()) {
        if (table.rows.empty()) throw PreconditionError("no rows to write");
        write_csv(table, std::cout);
    } else {
        emit_csv(table, cfg.output);
        log_stage("wrote " + std::to_string(table.rows.size()) + " rows to " + cfg.output);
    }
}

std::string params_text(const BoundReport& r) {
    std::string s;
    for (const auto& [k, v] : r.params) s += (s.empty() ? "" : ";") + k + "=" + format_cell(v);
    return s;
}

CsvTable cmd_sieve(const RunConfig& cfg) {
    const i64 X = integer_x(cfg, 2, "sieve");
    CsvTable t{{"re", "im", "norm", "kind", "rational_prime"}, {}};
    for (const auto& p : prime_ideal_sieve(X))
        t.add({p.generator.re(), p.generator.im(), p.norm, std::string(to_string(p.kind)), p.rational_prime});
    return t;
}

CsvTable cmd_enumerate(const RunConfig& cfg) {
    const i64 X = integer_x(cfg, 1, "enumerate");
    CsvTable t{{"re", "im", "norm", "arg"}, {}};
    IdealStream stream(X);
    std::vector<IdealRecord> block;
    while (stream.next_block(block))
        for (const auto& r : block) t.add({i64{r.re}, i64{r.im}, r.norm, ideal_arg(r.generator())});
    return t;
}

CsvTable cmd_sum(const RunConfig& cfg) {
    const i64 X = integer_x(cfg, 1, "sum");
    const MultFn f = named_function(cfg);
    const Sector J = sector_of(cfg);
    log_stage("building ideal table to " + std::to_string(X));
    const IdealTable table(X);
    const auto values = table.evaluate(f);
    CsvTable t{{"x", "S_f_re", "S_f_im", "S_fJ_re", "S_fJ_im"}, {}};
    for (double x : scale_points(static_cast<double>(X))) {
        const cplx s = partial_sum(table, values, x);
        const cplx sj = sector_sum(table, values, J, x);
        t.add({x, s.real(), s.imag(), sj.real(), sj.imag()});
    }
    return t;
}

CsvTable cmd_profile(const RunConfig& cfg) {
    const i64 X = integer_x(cfg, 3, "pretentious-profile");
    if (cfg.range != "log" && cfg.range != "wide") throw PreconditionError("--range must be log or wide");
    const MultFn f = named_function(cfg);
    CsvTable t{{"m", "t_star", "M_m", "certified"}, {}};
    for (int m : parse_int_list(cfg.m)) {
        log_stage("minimizing m = " + std::to_string(m));
        const auto q = cfg.range == "log" ? log_range_query(f, m, static_cast<double>(X))
                                          : wide_range_query(f, m, static_cast<double>(X));
        const auto r = minimize_over_t(q);
        t.add({i64{m}, r.t_star, r.value, i64{r.certified ? 1 : 0}});
    }
    return t;
}

CsvTable cmd_sectorial(const RunConfig& cfg) {
    const i64 X = integer_x(cfg, 10, "sectorial");
    if (cfg.T < 1) throw PreconditionError("--T must be >= 1");
    const MultFn f = named_function(cfg);
    const Sector J = sector_of(cfg);
    log_stage("building ideal table to " + std::to_string(X));
    const IdealTable table(X);
    const auto values = table.evaluate(f);
    CsvTable t{{"x", "S_fJ", "delta_S_f", "residual", "bound"}, {}};
    for (double x : scale_points(static_cast<double>(X))) {
        const auto d = sector_decomposition_residual(table, values, J, cfg.T, 0.0, x);
        t.add({x, sector_sum(table, values, J, x).real(), J.density() * partial_sum(table, values, x).real(),
               d.report.measured, d.report.bound});
    }
    return t;
}

CsvTable cmd_short_interval(const RunConfig& cfg) {
    const i64 X = integer_x(cfg, 4, "short-interval");
    ShortIntervalConfig s;
    s.X = X;
    s.h = cfg.h > 0 ? cfg.h : static_cast<i64>(std::round(std::cbrt(static_cast<double>(X) * static_cast<double>(X))));
    s.J = sector_of(cfg);
    s.T = cfg.T;
    s.f = named_function(cfg);
    // m = 0 is the delta_J term, already removed by the statistic
    for (int m : parse_int_list(cfg.m))
        if (m != 0) s.m_list.push_back(m);
    log_stage("sectorial statistic, X = " + std::to_string(X) + ", h = " + std::to_string(s.h));
    const auto sect = l2_statistic(s);
    log_stage("unrestricted statistic");
    auto plain_cfg = s;
    plain_cfg.m_list.clear();
    const auto plain = l2_unrestricted(plain_cfg);
    CsvTable t{{"statistic", "m", "X", "h", "value"}, {}};
    t.add({std::string("sectorial"), i64{0}, s.X, s.h, sect.value});
    t.add({std::string("unrestricted"), i64{0}, s.X, s.h, plain.value});
    for (const auto& mode : sect.decomposition) t.add({std::string("mode"), i64{mode.m}, s.X, s.h, mode.value});
    return t;
}

CsvTable verdict_table(const std::vector<Verdict>& verdicts) {
    CsvTable t{{"tag", "params", "measured", "bound", "ratio", "constant", "pass"}, {}};
    for (const auto& v : verdicts)
        t.add({v.report.tag, params_text(v.report), v.report.measured, v.report.bound, v.report.ratio,
               std::isnan(v.constant) ? CsvCell{std::string("missing")} : CsvCell{v.constant}, i64{v.pass ? 1 : 0}});
    return t;
}

CsvTable cmd_verify(const RunConfig& cfg) {
    if (cfg.calibration.empty()) throw PreconditionError("verify-lemmas needs --calibration");
    const double x = cfg.x_max > 0 ? cfg.x_max : 1e5;
    const auto calibration = Calibration::load(cfg.calibration);
    log_stage("running suite to x = " + format_cell(x));
    const auto verdicts = verify(run_suite({x, cfg.seed}), calibration);
    const CsvTable t = verdict_table(verdicts);
    emit(t, cfg);
    std::size_t failed = 0;
    for (const auto& v : verdicts)
        if (!v.pass) {
            ++failed;
            log_stage("FAIL " + v.report.tag + " " + params_text(v.report) + " ratio " + format_cell(v.report.ratio) +
                      " > " + format_cell(v.constant));
        }
    if (failed) throw RegressionFailure(std::to_string(failed) + " report(s) exceed their frozen constants");
    return {};
}

CsvTable cmd_calibrate(const RunConfig& cfg) {
    if (cfg.calibration.empty()) throw PreconditionError("calibrate needs --calibration (output path)");
    const double x = cfg.x_max > 0 ? cfg.x_max : 1e5;
    if (x > 1e5) throw PreconditionError("calibrate runs at --x-max <= 100000");
    log_stage("running suite to x = " + format_cell(x));
    const auto reports = run_suite({x, cfg.seed});
    const auto calibration = calibrate(reports);
    calibration.save(cfg.calibration);
    log_stage("wrote " + std::to_string(calibration.entries().size()) + " constants to " + cfg.calibration);
    return verdict_table(verify(reports, calibration));
}

const char* kSchemas = R"(CSV schemas (header row, then one row per record; numbers use 12 significant digits):
  sieve                re,im,norm,kind,rational_prime
  enumerate            re,im,norm,arg
  sum                  x,S_f_re,S_f_im,S_fJ_re,S_fJ_im          (x = 10, 100, ... and x-max)
  pretentious-profile  m,t_star,M_m,certified               (one row per m; certified is 0/1)
  sectorial            x,S_fJ,delta_S_f,residual,bound        (window 0 < N <= x; real parts)
  short-interval       statistic,m,X,h,value                  (statistic: sectorial, unrestricted, mode)
  verify-lemmas        tag,params,measured,bound,ratio,constant,pass
  calibrate            tag,params,measured,bound,ratio,constant,pass
Angles are rational multiples of pi: --theta2 1/4 means pi/4.
Exit status: 0 success, 1 regression against a frozen constant or failed run, 2 usage error.)";

} // namespace

double parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        std::size_t used = 0;
        if (slash == std::string::npos) {
            const double v = std::stod(text, &used);
            if (used == text.size()) return v;
        } else {
            const std::string a = text.substr(0, slash), b = text.substr(slash + 1);
            std::size_t ua = 0, ub = 0;
            const double num = std::stod(a, &ua), den = std::stod(b, &ub);
            if (ua == a.size() && ub == b.size() && den != 0.0) return num / den;
        }
    } catch (const std::logic_error&) {
    }
    throw PreconditionError("not a rational number: '" + text + "'");
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    if (text.empty()) return out;
    auto to_int = [&](const std::string& s) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::logic_error&) {
            used = 0;
        }
        if (used == 0 || used != s.size()) throw PreconditionError("not an integer list: '" + text + "'");
        return v;
    };
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
        const int a = to_int(text.substr(0, dots)), b = to_int(text.substr(dots + 2));
        if (a > b) throw PreconditionError("empty range '" + text + "'");
        for (int m = a; m <= b; ++m) out.push_back(m);
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_int(item));
    return out;
}

int run(const std::vector<std::string>& args) {
    CLI::App app{"Multiplicative functions on the ideals of Z[i]: sieves, sums, pretentious profiles,\n"
                 "sector decompositions, short-interval statistics and lemma regression."};
    app.footer(kSchemas);
    // -h would clash with --h (the short-interval length).
    app.set_help_flag("--help", "Print this help message and exit");
    app.set_config("--config", "", "Read `key = value` defaults from a file; flags override it");
    app.require_subcommand(1, 1);

    RunConfig cfg;
    app.add_option("--x-max", cfg.x_max, "Largest norm / scale X");
    app.add_option("--seed", cfg.seed, "Seed for random multiplicative functions")->capture_default_str();
    app.add_option("--theta1", cfg.theta1, "Sector start as a multiple of pi")->capture_default_str();
    app.add_option("--theta2", cfg.theta2, "Sector end as a multiple of pi")->capture_default_str();
    app.add_option("--m", cfg.m, "Angular modes: a..b, a,b,c or a")->capture_default_str();
    app.add_option("--T", cfg.T, "Fourier truncation")->capture_default_str();
    app.add_option("--h", cfg.h, "Short-interval length (default round(X^(2/3)))");
    app.add_option("--f", cfg.f, "one | mu | liouville | random | random-nc")->capture_default_str();
    app.add_option("--range", cfg.range, "t-range for pretentious-profile: log (|t| <= log x) or wide (|t| <= 2x)")
        ->capture_default_str();
    app.add_option("--threads", cfg.threads, "Worker threads (fallback: GAUSS_HALASZ_THREADS)");
    app.add_option("--output", cfg.output, "CSV output path (default stdout)");
    app.add_option("--calibration", cfg.calibration, "Calibration file");

    struct Sub {
        const char* name;
        const char* help;
        CsvTable (*fn)(const RunConfig&);
    };
    const Sub subs[] = {
        {"sieve", "Prime ideals of norm <= x-max", cmd_sieve},
        {"enumerate", "All ideals of norm <= x-max in norm order", cmd_enumerate},
        {"sum", "Partial sums and sector sums of f", cmd_sum},
        {"pretentious-profile", "M_m and its minimizer for each m", cmd_profile},
        {"sectorial", "Sector decomposition residuals for 0 < N <= x", cmd_sectorial},
        {"short-interval", "L2 short-interval statistics", cmd_short_interval},
        {"verify-lemmas", "Check the regression lattice against a calibration file", cmd_verify},
        {"calibrate", "Measure the regression lattice and write frozen constants", cmd_calibrate},
    };
    std::vector<std::pair<CLI::App*, const Sub*>> handles;
    for (const auto& s : subs) {
        auto* sc = app.add_subcommand(s.name, s.help);
        sc->fallthrough();
        sc->set_help_flag("--help", "Print this help message and exit");
        sc->footer(kSchemas);
        handles.push_back({sc, &s});
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        set_threads(resolve_threads(cfg.threads));
        for (const auto& [sc, s] : handles) {
            if (!sc->parsed()) continue;
            const CsvTable t = s->fn(cfg);
            if (!t.header.empty()) emit(t, cfg);
        }
        return kOk;
    } catch (const PreconditionError& e) {
        std::cerr << "usage error: " << e.what() << "\nRun with --help for options.\n";
        return kUsage;
    } catch (const RegressionFailure& e) {
        std::cerr << "regression: " << e.what() << '\n';
        return kRegression;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRegression;
    }
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

} // namespace zi::cli
