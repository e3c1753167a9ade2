#include "zi/shortint.hpp"

#include <cmath>

#include "zi/errors.hpp"
#include "zi/kernels.hpp"
#include "zi/sectorial.hpp"

namespace zi {

namespace {

void validate(const ShortIntervalConfig& cfg) {
    if (cfg.X < 2 || cfg.X % 2 != 0) throw PreconditionError("short interval: X must be even and >= 2");
    if (cfg.h < 1 || cfg.h >= cfg.X) throw PreconditionError("short interval: need 1 <= h < X");
    check_memory(static_cast<std::size_t>(cfg.X + cfg.h + 1) * sizeof(cplx) * 3, "short interval arrays");
}

ModeL2 mode(const ShortIntervalConfig& cfg, int m, cplx weight) {
    const auto g = compress_mode(cfg.f, m, cfg.X + cfg.h);
    return {m, weight, std::norm(weight) * l2_from_array(g.values, cfg.X, cfg.h)};
}

} // namespace

CompressedFn compress_mode(const MultFn& f, int m, i64 N_max) {
    if (m == 0) return norm_compress_streaming(f, N_max);
    auto g = norm_compress_streaming(pointwise_product(f, angular_character(m)), N_max);
    g.source_label = f.label() + "*lambda_" + std::to_string(m);
    return g;
}

HFactors h_factor(const CompressedFn& g, i64 X) {
    if (X > g.max_n()) throw PreconditionError("h_factor: array shorter than X");
    double first = 1.0, second = 1.0;
    for (i64 p : rational_primes_up_to(X)) {
        const double a = std::abs(g[p]) - 1.0;
        const auto pd = static_cast<double>(p);
        first *= 1.0 + a * a / pd;
        second *= 1.0 + a / pd;
    }
    return {first, second};
}

std::vector<BoundReport> h_factor_reports(const CompressedFn& g, i64 X, int m) {
    const auto hf = h_factor(g, X);
    const auto Xd = static_cast<double>(X);
    return {make_report("h_factor_first", {{"X", Xd}, {"m", m}}, hf.first, std::log(Xd)),
            make_report("h_factor_second", {{"X", Xd}, {"m", m}}, hf.second, 1.0)};
}

H1Result h1_check(const MultFn& f, int m, double z, double w) {
    if (!(2.0 <= z && z <= w)) throw PreconditionError("h1_check: need 2 <= z <= w");
    const MultFn lam = angular_character(m);
    const auto primes = prime_ideal_sieve(static_cast<i64>(std::floor(w)));
    CompensatedSum lhs, rhs;
    for (std::size_t i = 0; i + 1 < primes.size(); ++i) {
        const auto& p = primes[i];
        if (p.kind != PrimeKind::SplitPrimary || static_cast<double>(p.norm) <= z) continue;
        const auto& q = primes[i + 1];
        const double paired = std::abs(f.at(p, 1) * lam.at(p, 1) + f.at(q, 1) * lam.at(q, 1));
        const double inv = 1.0 / static_cast<double>(p.norm);
        lhs.add(2.0 * paired * inv);
        rhs.add(2.0 * inv);
    }
    const double r = rhs.value();
    return {lhs.value(), r, r > 0.0 ? lhs.value() / r : 0.0, 1.0 / std::log(z)};
}

cplx twisted_long_sum(const IdealTable& table, std::span<const cplx> values, int m, double t0, double Z) {
    if (Z < 1.0) throw PreconditionError("twisted_long_sum: need Z >= 1");
    const std::size_t n = table.window(0.0, Z).second;
    return parallel::twisted_sum(values.first(n), table.ideals().first(n), m, t0);
}

cplx twisted_long_sum(const CompressedFn& g, double t0, double Z) {
    const auto top = static_cast<i64>(std::floor(Z));
    if (Z < 1.0 || top > g.max_n()) throw PreconditionError("twisted_long_sum: need 1 <= Z <= array length");
    CompensatedComplexSum s;
    for (i64 n = 1; n <= top; ++n)
        if (g[n] != cplx{0.0, 0.0}) s.add(g[n] * std::polar(1.0, -t0 * std::log(static_cast<double>(n))));
    return s.value();
}

cplx twisted_long_sum(const MultFn& f, int m, double t0, double Z) {
    if (Z < 1.0) throw PreconditionError("twisted_long_sum: need Z >= 1");
    return twisted_long_sum(compress_mode(f, m, static_cast<i64>(std::floor(Z))), t0, Z);
}

std::vector<cplx> window_sums(std::span<const cplx> d, i64 X, i64 h) {
    if (static_cast<i64>(d.size()) < X + h + 1) throw PreconditionError("window_sums: array shorter than X + h");
    const i64 first = X / 2;
    std::vector<cplx> out;
    out.reserve(static_cast<std::size_t>(X - first));
    auto fresh = [&](i64 n) {
        CompensatedComplexSum s;
        for (i64 N = n + 1; N <= n + h; ++N) s.add(d[static_cast<std::size_t>(N)]);
        return s;
    };
    CompensatedComplexSum w;
    for (i64 n = first; n < X; ++n) {
        if ((n - first) % static_cast<i64>(kReductionChunk) == 0) {
            w = fresh(n);
        } else {
            w.add(d[static_cast<std::size_t>(n + h)]);
            w.add(-d[static_cast<std::size_t>(n)]);
        }
        out.push_back(w.value());
    }
    return out;
}

double l2_from_array(std::span<const cplx> d, i64 X, i64 h) {
    const auto w = window_sums(d, X, h);
    const auto hd = static_cast<double>(h);
    CompensatedSum s;
    for (const auto& v : w) s.add(std::norm(v / hd));
    return 2.0 / static_cast<double>(X) * s.value();
}

L2Report l2_statistic(const ShortIntervalConfig& cfg) {
    validate(cfg);
    const i64 N = cfg.X + cfg.h;
    L2Report out{cfg.X, cfg.h, 0.0, {}};
    if (!cfg.J.is_full()) {
        const auto all = norm_compress_streaming(cfg.f, N);
        const auto in_J = norm_compress_streaming(cfg.f, N, cfg.J);
        const double delta = cfg.J.density();
        std::vector<cplx> d(all.values.size());
        for (std::size_t n = 0; n < d.size(); ++n) d[n] = in_J.values[n] - delta * all.values[n];
        out.value = l2_from_array(d, cfg.X, cfg.h);
    }
    for (int m : cfg.m_list) {
        if (m == 0 || std::abs(m) > cfg.T) throw PreconditionError("l2_statistic: modes must satisfy 0 < |m| <= T");
        out.decomposition.push_back(mode(cfg, m, fourier_coeff(cfg.J, m)));
    }
    return out;
}

L2Report l2_unrestricted(const ShortIntervalConfig& cfg) {
    validate(cfg);
    const auto all = norm_compress_streaming(cfg.f, cfg.X + cfg.h);
    L2Report out{cfg.X, cfg.h, l2_from_array(all.values, cfg.X, cfg.h), {}};
    for (int m : cfg.m_list) out.decomposition.push_back(mode(cfg, m, 1.0));
    return out;
}

} // namespace zi
