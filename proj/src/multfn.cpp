#include "zi/multfn.hpp"

#include <cmath>
#include <numbers>

#include "zi/errors.hpp"
#include "zi/kernels.hpp"
#include "zi/random.hpp"

namespace zi {

namespace {

cplx ipow(cplx base, int k) {
    cplx r{1.0, 0.0};
    for (int i = 0; i < k; ++i) r *= base;
    return r;
}

std::uint64_t prime_key(std::uint64_t seed, const PrimeIdeal& p) {
    return splitmix64(splitmix64(seed) ^ (static_cast<std::uint64_t>(p.norm) * 4 + static_cast<std::uint64_t>(p.kind)));
}

cplx random_value(std::uint64_t key, RandomValues kind) {
    if (kind == RandomValues::Sign) return (key >> 63) ? cplx{-1.0, 0.0} : cplx{1.0, 0.0};
    return std::polar(1.0, 2.0 * std::numbers::pi * unit_interval(key));
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

} // namespace

MultFn::MultFn(std::string label, PrimePowerRule rule, bool completely_multiplicative)
    : label_(std::move(label)),
      rule_(std::make_shared<const PrimePowerRule>(std::move(rule))),
      completely_multiplicative_(completely_multiplicative) {}

cplx MultFn::at(const PrimeIdeal& p, int k) const {
    if (k <= 0) return {1.0, 0.0};
    if (completely_multiplicative_) return ipow((*rule_)(p, 1), k);
    return (*rule_)(p, k);
}

MultFn constant_one() {
    return {"1", [](const PrimeIdeal&, int) { return cplx{1.0, 0.0}; }, true};
}

MultFn mobius() {
    return {"mu", [](const PrimeIdeal&, int k) { return k == 1 ? cplx{-1.0, 0.0} : cplx{0.0, 0.0}; }, false};
}

MultFn unit_indicator() {
    return {"eps", [](const PrimeIdeal&, int) { return cplx{0.0, 0.0}; }, true};
}

MultFn angular_character(int m) {
    return {"lambda_" + std::to_string(m),
            [m](const PrimeIdeal& p, int) { return std::polar(1.0, 4.0 * m * ideal_arg(p.generator)); }, true};
}

MultFn norm_twist(double t) {
    return {"N^{i" + format_double(t) + "}",
            [t](const PrimeIdeal& p, int) { return std::polar(1.0, t * std::log(static_cast<double>(p.norm))); },
            true};
}

MultFn divisor_kappa(double kappa) {
    return {"d_" + format_double(kappa), [kappa](const PrimeIdeal&, int k) { return cplx{d_kappa(kappa, k), 0.0}; },
            false};
}

MultFn random_multiplicative(std::uint64_t seed, RandomValues kind, bool completely_multiplicative) {
    std::string label = "random(" + std::to_string(seed) + (kind == RandomValues::Sign ? ",sign" : ",circle") +
                        (completely_multiplicative ? ")" : ",mult)");
    return {std::move(label),
            [seed, kind](const PrimeIdeal& p, int k) {
                const std::uint64_t key = prime_key(seed, p);
                if (k == 1) return random_value(key, kind);
                return random_value(splitmix64(key + static_cast<std::uint64_t>(k)), kind);
            },
            completely_multiplicative};
}

MultFn pointwise_product(const MultFn& f, const MultFn& g) {
    const bool cm = f.completely_multiplicative() && g.completely_multiplicative();
    return {f.label() + "*" + g.label(), [f, g](const PrimeIdeal& p, int k) { return f.at(p, k) * g.at(p, k); }, cm};
}

cplx eval(const MultFn& f, const IdealFactorization& fac) {
    cplx v{1.0, 0.0};
    for (const auto& pp : fac.factors) v *= f.at(pp.prime, pp.exponent);
    return v;
}

cplx eval(const MultFn& f, const CanonicalGenerator& g, const IdealFactorizer& factorizer) {
    return eval(f, factorizer.factor(g));
}

cplx eval(const MultFn& f, const CanonicalGenerator& g) { return eval(f, factor_ideal(g)); }

MultFn convolve(const MultFn& f, const MultFn& g) {
    return {"(" + f.label() + ")conv(" + g.label() + ")",
            [f, g](const PrimeIdeal& p, int k) {
                cplx s{0.0, 0.0};
                for (int j = 0; j <= k; ++j) s += f.at(p, j) * g.at(p, k - j);
                return s;
            },
            false};
}

std::vector<cplx> lambda_f(const MultFn& f, const PrimeIdeal& p, int k_max) {
    if (k_max < 1) throw PreconditionError("lambda_f: k_max must be >= 1");
    const double log_norm = std::log(static_cast<double>(p.norm));
    // reduced[j] = Lambda_f(p^j) / log N p
    std::vector<cplx> reduced(static_cast<std::size_t>(k_max) + 1);
    std::vector<cplx> fp(static_cast<std::size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) fp[static_cast<std::size_t>(k)] = f.at(p, k);
    for (int m = 1; m <= k_max; ++m) {
        cplx v = static_cast<double>(m) * fp[static_cast<std::size_t>(m)];
        for (int j = 1; j < m; ++j) v -= fp[static_cast<std::size_t>(m - j)] * reduced[static_cast<std::size_t>(j)];
        reduced[static_cast<std::size_t>(m)] = v;
    }
    std::vector<cplx> out;
    out.reserve(static_cast<std::size_t>(k_max));
    for (int m = 1; m <= k_max; ++m) out.push_back(reduced[static_cast<std::size_t>(m)] * log_norm);
    return out;
}

LambdaBoundCheck check_lambda_bound(const MultFn& f, double kappa, i64 X) {
    if (X < 2) throw PreconditionError("check_lambda_bound: need X >= 2");
    LambdaBoundCheck result;
    for (const auto& p : prime_ideal_sieve(X)) {
        int k_max = 1;
        for (i64 q = p.norm; q <= X / p.norm; q *= p.norm) ++k_max;
        const auto lam = lambda_f(f, p, k_max);
        const double log_norm = std::log(static_cast<double>(p.norm));
        for (int k = 1; k <= k_max; ++k) {
            const double ratio = std::abs(lam[static_cast<std::size_t>(k - 1)]) / log_norm;
            result.worst_ratio = std::max(result.worst_ratio, ratio);
            if (result.ok && ratio > kappa * (1.0 + 1e-12)) {
                result.ok = false;
                result.first_violation = PrimePower{p, k};
            }
        }
    }
    return result;
}

double d_kappa(double kappa, int exponent) {
    double v = 1.0;
    for (int j = 1; j <= exponent; ++j) v *= (kappa + j - 1) / j;
    return v;
}

double d_kappa(double kappa, const IdealFactorization& fac) {
    if (kappa < 1.0) throw PreconditionError("d_kappa: need kappa >= 1");
    double v = 1.0;
    for (const auto& pp : fac.factors) v *= d_kappa(kappa, pp.exponent);
    return v;
}

SmoothRough smooth_rough_split(const MultFn& f, double y) {
    if (y < 2.0) throw PreconditionError("smooth_rough_split: need y >= 2");
    const bool cm = f.completely_multiplicative();
    MultFn smooth{"smooth_" + format_double(y) + "(" + f.label() + ")",
                  [f, y](const PrimeIdeal& p, int k) {
                      return static_cast<double>(p.norm) <= y ? f.at(p, k) : cplx{0.0, 0.0};
                  },
                  cm};
    MultFn rough{"rough_" + format_double(y) + "(" + f.label() + ")",
                 [f, y](const PrimeIdeal& p, int k) {
                     return static_cast<double>(p.norm) > y ? f.at(p, k) : cplx{0.0, 0.0};
                 },
                 cm};
    return {std::move(smooth), std::move(rough)};
}

GhDecomposition gh_decompose(const MultFn& f) {
    MultFn g{"g(" + f.label() + ")", [f](const PrimeIdeal& p, int) { return f.at(p, 1); }, true};
    MultFn h{"h(" + f.label() + ")",
             [f](const PrimeIdeal& p, int k) {
                 if (k == 1) return cplx{0.0, 0.0};
                 return f.at(p, k) - f.at(p, 1) * f.at(p, k - 1);
             },
             false};
    return {std::move(g), std::move(h)};
}

double h_tail(const IdealTable& table, const MultFn& h, double z, i64 X) {
    if (z < 1.0) throw PreconditionError("h_tail: need z >= 1");
    if (static_cast<double>(X) <= z) return 0.0;
    const auto values = table.evaluate(h);
    const auto [a, b] = table.window(z, static_cast<double>(X));
    const auto ids = table.ideals();
    return parallel::abs_over_norm_sum(std::span(values).subspan(a, b - a), ids.subspan(a, b - a));
}

CompressedFn norm_compress(const IdealTable& table, std::span<const cplx> values, i64 X, std::string label) {
    if (X < 1) throw PreconditionError("norm_compress: need X >= 1");
    if (X > table.max_norm()) throw PreconditionError("norm_compress: X beyond ideal table");
    check_memory(static_cast<std::size_t>(X + 1) * sizeof(cplx), "norm_compress");
    CompressedFn out;
    out.source_label = std::move(label);
    out.values.assign(static_cast<std::size_t>(X) + 1, cplx{0.0, 0.0});
    const auto ids = table.ideals();
    const std::size_t n = table.count_upto(static_cast<double>(X));
    for (std::size_t i = 0; i < n; ++i) out.values[static_cast<std::size_t>(ids[i].norm)] += values[i];
    return out;
}

CompressedFn norm_compress(const IdealTable& table, const MultFn& f, i64 X) {
    return norm_compress(table, table.evaluate(f), X, f.label());
}

CompressedFn norm_compress_streaming(const MultFn& f, i64 X) { return norm_compress_streaming(f, X, Sector::full()); }

CompressedFn norm_compress_streaming(const MultFn& f, i64 X, const Sector& J) {
    if (X < 1) throw PreconditionError("norm_compress: need X >= 1");
    check_memory(static_cast<std::size_t>(X + 1) * (sizeof(cplx) + sizeof(std::uint32_t)), "norm_compress");
    CompressedFn out;
    out.source_label = f.label();
    out.values.assign(static_cast<std::size_t>(X) + 1, cplx{0.0, 0.0});
    const IdealFactorizer factorizer(X);
    // memo[prime index][k - 1]
    std::vector<std::vector<cplx>> memo(factorizer.primes().size());
    IdealStream stream(X);
    std::vector<IdealRecord> block;
    std::vector<IdealFactorizer::FactorRef> refs;
    while (stream.next_block(block)) {
        for (const auto& r : block) {
            if (!J.is_full() && !J.contains(ideal_arg(r.generator()))) continue;
            factorizer.factor_refs(r.generator(), refs);
            cplx v{1.0, 0.0};
            for (auto ref : refs) {
                auto& cache = memo[ref.prime_index];
                const auto k = static_cast<std::size_t>(ref.exponent);
                while (cache.size() < k)
                    cache.push_back(f.at(factorizer.primes()[ref.prime_index], static_cast<int>(cache.size()) + 1));
                v *= cache[k - 1];
            }
            out.values[static_cast<std::size_t>(r.norm)] += v;
        }
    }
    return out;
}

cplx partial_sum(const IdealTable& table, std::span<const cplx> values, double x) {
    const std::size_t n = table.window(0.0, x).second;
    return parallel::chunked_sum(values.first(n));
}

cplx interval_sum(const IdealTable& table, std::span<const cplx> values, double x, double h) {
    const auto [a, b] = table.window(x, x + h);
    return parallel::chunked_sum(values.subspan(a, b - a));
}

cplx sector_sum(const IdealTable& table, std::span<const cplx> values, const Sector& J, double x) {
    return sector_interval_sum(table, values, J, 0.0, x);
}

cplx sector_interval_sum(const IdealTable& table, std::span<const cplx> values, const Sector& J, double x, double h) {
    const auto [a, b] = table.window(x, x + h);
    return parallel::sector_sum(values.subspan(a, b - a), table.ideals().subspan(a, b - a), J.theta1(), J.theta2());
}

cplx partial_sum(const IdealTable& table, const MultFn& f, double x) {
    return partial_sum(table, table.evaluate(f), x);
}

} // namespace zi
