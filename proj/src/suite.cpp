#include "zi/suite.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "zi/errors.hpp"
#include "zi/lemma_lab.hpp"
#include "zi/pretentious.hpp"
#include "zi/random.hpp"
#include "zi/sectorial.hpp"
#include "zi/shortint.hpp"

namespace zi {

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

const std::map<std::string, std::string>& suite_shapes() {
    static const std::map<std::string, std::string> shapes{
        {"psi_ideal", "psi(x) / x; x on half-decades"},
        {"mertens", "|sum 1/Np - loglog x| / 1; x on half-decades"},
        {"brun_titchmarsh", "#{U<p<=U+H, p=1(4)} / (H/(2 log 2H)); H in {U^1/2, U^3/4, U}"},
        {"short_interval_lambda", "sum Lambda over [Me^-1/T, Me^1/T] / (M/T); T in 1..32, T^2<=M"},
        {"mean_square", "int_-T^T |sum c Lambda N^-it|^2 / sum N|c|^2 Lambda; T in {4,10}"},
        {"h_factor_first", "prod(1+(|g(p)|-1)^2/p) / log X; f in {1,mu,random}, m in {0,1,3}"},
        {"h_factor_second", "prod(1+(|g(p)|-1)/p) / 1; f in {1,mu,random}, m in {0,1,3}"},
        {"gauss_circle", "|#{Na<=x} - pi x/4| / sqrt x"},
        {"wedge_count", "wedge count / (delta Y + sqrt Y)"},
        {"h_tail", "sum_{z<Nd<=X} |h(d)|/Nd / z^-1/4; h from f=g*h"},
        {"thm12", "|S_f(x)| / ((1+M)e^-M x + x loglog x / log x), M = M_pret"},
        {"euler_pretentious", "|F(c0+it)| / ((log x)^kappa exp(-D^2))"},
        {"fourier_remainder", "max_theta |R_T(theta)| / min(1, 1/(T|th-th1|)+1/(T|th-th2|))"},
        {"summed_remainder", "sum_{X<Na<=Y} |R_T(arg a)| / ((Y-X)log(T+1)/T + sqrt Y)"},
        {"sector_decomposition", "|left - sum b_m twisted| / ((Y-X)log(T+1)/T + sqrt Y)"},
        {"twisted_long_sum", "|sum_{Na<=Z} f lambda_m N^-it0| / Z"},
        {"l2_sectorial", "sectorial L2 statistic / 1; J=[0,pi/4), h = X^(2/3) (h=10^2.4 at X=10^4)"},
        {"l2_unrestricted", "unrestricted L2 statistic / 1; h = X^(2/3) (h=10^2.4 at X=10^4)"},
    };
    return shapes;
}

std::uint64_t shape_hash(const std::string& tag) {
    const auto& shapes = suite_shapes();
    const auto it = shapes.find(tag);
    if (it == shapes.end()) throw PreconditionError("unknown report tag " + tag);
    return fnv1a64(tag + "|" + it->second + "|v1");
}

Calibration Calibration::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ResourceError("cannot open calibration file " + path);
    std::string line;
    if (!std::getline(in, line) || line != "# calibration v1")
        throw PreconditionError("calibration file " + path + ": missing '# calibration v1' header");
    Calibration out;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string tag, hash;
        double constant = 0.0;
        if (!(ss >> tag >> hash >> constant))
            throw PreconditionError("calibration file " + path + ": bad line " + std::to_string(line_no));
        out.entries_[tag] = {std::stoull(hash, nullptr, 16), constant};
    }
    return out;
}

void Calibration::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ResourceError("cannot write calibration file " + path);
    out << "# calibration v1\n";
    char buf[128];
    for (const auto& [tag, e] : entries_) {
        std::snprintf(buf, sizeof buf, " %016" PRIx64 " %.12g\n", e.param_hash, e.constant);
        out << tag << buf;
    }
}

void Calibration::set(const std::string& tag, double constant) { entries_[tag] = {shape_hash(tag), constant}; }

std::optional<double> Calibration::constant(const std::string& tag) const {
    const auto it = entries_.find(tag);
    if (it == entries_.end() || it->second.param_hash != shape_hash(tag)) return std::nullopt;
    return it->second.constant;
}

namespace {

std::vector<double> half_decades(double x_max) {
    std::vector<double> xs;
    for (int k = 6; std::pow(10.0, k / 2.0) <= x_max * (1 + 1e-12); ++k) xs.push_back(std::round(std::pow(10.0, k / 2.0)));
    return xs;
}

std::vector<double> decades(double lo, double x_max) {
    std::vector<double> xs;
    for (double x = lo; x <= x_max * (1 + 1e-12); x *= 10.0) xs.push_back(x);
    return xs;
}

std::vector<Sector> test_sectors() {
    return {Sector::from_pi_fractions(0.0, 0.25), Sector::from_pi_fractions(0.05, 0.3),
            Sector::from_pi_fractions(0.1, 0.5)};
}

struct NamedValues {
    MultFn f;
    std::vector<cplx> values;
};

} // namespace

std::vector<BoundReport> run_suite(const SuiteOptions& options) {
    if (options.x_max < 1000.0) throw PreconditionError("suite: need x_max >= 1000");
    const double x_max = options.x_max;
    const auto xs = half_decades(x_max);
    const auto dec = decades(1000.0, x_max);
    std::vector<BoundReport> out;

    // Preliminary lemmas.
    for (double x : xs) out.push_back(make_report("psi_ideal", {{"x", x}}, psi_ideal(x), x));
    for (double x : xs) out.push_back(make_report("mertens", {{"x", x}}, std::abs(mertens_ideal(x)), 1.0));
    for (double U : xs)
        for (double H : {std::floor(std::sqrt(U)), std::floor(std::pow(U, 0.75)), U}) out.push_back(brun_titchmarsh_mod4(U, H));
    for (double M : xs)
        for (double T : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0})
            if (T * T <= M) out.push_back(short_interval_vm(M, T));
    {
        const double x = std::min(x_max, 1e4);
        for (double T : {4.0, 10.0}) {
            std::vector<DirichletTerm> aligned, rnd;
            SplitMix64 rng(splitmix64(options.seed) ^ static_cast<std::uint64_t>(T));
            for (const auto& p : prime_ideal_sieve(static_cast<i64>(x))) {
                if (static_cast<double>(p.norm) < T * T) continue;
                aligned.push_back({p.generator, 1.0});
                rnd.push_back({p.generator, std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform())});
            }
            auto a = mean_square_dirichlet(aligned, T, x);
            a.params.push_back({"random", 0.0});
            out.push_back(a);
            auto r = mean_square_dirichlet(rnd, T, x);
            r.params.push_back({"random", 1.0});
            out.push_back(r);
        }
    }
    const MultFn rnd = random_multiplicative(options.seed);
    const std::vector<MultFn> fs{constant_one(), mobius(), rnd};
    for (std::size_t fi = 0; fi < fs.size(); ++fi)
        for (int m : {0, 1, 3}) {
            const auto g = compress_mode(fs[fi], m, static_cast<i64>(xs.back()));
            for (double X : xs)
                for (auto r : h_factor_reports(g, static_cast<i64>(X), m)) {
                    r.params.push_back({"f", static_cast<double>(fi)});
                    out.push_back(r);
                }
        }

    // Counting.
    for (double x : xs) {
        const auto n = static_cast<double>(count_ideals(static_cast<i64>(x)));
        out.push_back(make_report("gauss_circle", {{"x", x}}, std::abs(n - std::numbers::pi / 4.0 * x), std::sqrt(x)));
    }
    for (double theta : {0.3, std::numbers::pi / 4.0})
        for (double delta : {0.01, 0.1})
            for (double Y : xs)
                out.push_back(make_report("wedge_count", {{"theta", theta}, {"delta", delta}, {"Y", Y}},
                                          static_cast<double>(wedge_count(theta, delta, 0.0, Y)),
                                          delta * Y + std::sqrt(Y)));

    const IdealTable table(static_cast<i64>(x_max));
    const MultFn rnd_nc = random_multiplicative(options.seed, RandomValues::Sign, false);
    for (const MultFn* f : {&fs[1], &rnd_nc}) {
        const MultFn h = gh_decompose(*f).h;
        for (double z : {10.0, 100.0})
            out.push_back(make_report("h_tail", {{"z", z}, {"X", x_max}, {"f", f == &rnd_nc ? 2.0 : 1.0}},
                                      h_tail(table, h, z, static_cast<i64>(x_max)), std::pow(z, -0.25)));
    }

    // Mean-value theorem shapes.
    std::vector<NamedValues> vals;
    for (const auto& f : fs) vals.push_back({f, table.evaluate(f)});
    for (std::size_t fi = 1; fi < vals.size(); ++fi)
        for (double x : dec) {
            const double M = minimize_over_t(log_range_query(vals[fi].f, 0, x)).value;
            const double S = std::abs(partial_sum(table, vals[fi].values, x));
            out.push_back(make_report("thm12", {{"x", x}, {"f", static_cast<double>(fi)}, {"M_pret", M}}, S,
                                      halasz_rhs(Thm12Inputs{x, M})));
        }
    for (std::size_t fi = 0; fi < 2; ++fi)
        for (double x : dec)
            for (auto r : check_euler_pretentious_bound(fs[fi], 1.0, x, {0.0, 1.0, 5.0})) {
                r.params.push_back({"f", static_cast<double>(fi)});
                out.push_back(r);
            }

    // Sector Fourier layer.
    for (const auto& J : test_sectors())
        for (int T : {8, 32, 64}) {
            const auto trunc = fourier_coeffs(J, T);
            BoundReport worst{};
            bool have = false;
            const int samples = 1024;
            for (int k = 0; k < samples; ++k) {
                const double theta = (k + 0.5) * kHalfPi / samples;
                auto r = remainder_report(trunc, theta);
                if (!have || r.ratio > worst.ratio) worst = r, have = true;
            }
            out.push_back(worst);
        }
    for (const auto& J : test_sectors())
        for (int T : {8, 32})
            for (double Y : dec)
                for (double X : {0.0, Y / 2.0}) {
                    out.push_back(summed_remainder_report(table, fourier_coeffs(J, T), X, Y));
                    for (std::size_t fi = 0; fi < 2; ++fi) {
                        auto d = sector_decomposition_residual(table, vals[fi].values, J, T, X, Y).report;
                        d.params.push_back({"f", static_cast<double>(fi)});
                        out.push_back(d);
                    }
                }
    for (std::size_t fi = 1; fi < vals.size(); ++fi)
        for (int m : {1, 2})
            for (double t0 : {0.0, 2.0})
                for (double Z : dec)
                    out.push_back(make_report("twisted_long_sum",
                                              {{"f", static_cast<double>(fi)}, {"m", m}, {"t0", t0}, {"Z", Z}},
                                              std::abs(twisted_long_sum(table, vals[fi].values, m, t0, Z)), Z));

    // Short-interval statistics.
    std::vector<std::pair<i64, i64>> windows{{10000, static_cast<i64>(std::round(std::pow(10.0, 2.4)))}};
    for (double X = 1e5; X <= x_max * (1 + 1e-12); X *= 10.0)
        windows.push_back({static_cast<i64>(X), static_cast<i64>(std::round(std::cbrt(X * X)))});
    for (std::size_t fi = 1; fi < fs.size(); ++fi)
        for (const auto& [X, h] : windows) {
            ShortIntervalConfig cfg;
            cfg.X = X;
            cfg.h = h;
            cfg.f = fs[fi];
            cfg.J = Sector::from_pi_fractions(0.0, 0.25);
            const auto Xd = static_cast<double>(X), hd = static_cast<double>(h);
            const double fd = static_cast<double>(fi);
            out.push_back(make_report("l2_sectorial", {{"X", Xd}, {"h", hd}, {"f", fd}}, l2_statistic(cfg).value, 1.0));
            out.push_back(make_report("l2_unrestricted", {{"X", Xd}, {"h", hd}, {"f", fd}}, l2_unrestricted(cfg).value, 1.0));
        }
    return out;
}

Calibration calibrate(const std::vector<BoundReport>& reports) {
    std::map<std::string, double> worst;
    for (const auto& r : reports) worst[r.tag] = std::max(worst[r.tag], r.ratio);
    Calibration c;
    for (const auto& [tag, ratio] : worst) c.set(tag, kCalibrationSafety * ratio);
    return c;
}

std::vector<Verdict> verify(const std::vector<BoundReport>& reports, const Calibration& calibration) {
    std::vector<Verdict> out;
    for (const auto& r : reports) {
        const auto c = calibration.constant(r.tag);
        if (!c) {
            out.push_back({r, std::numeric_limits<double>::quiet_NaN(), false});
        } else {
            out.push_back({r, *c, r.ratio <= *c});
        }
    }
    return out;
}

} // namespace zi
