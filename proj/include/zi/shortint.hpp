#pragma once

// Norm-compressed modes g_m of f lambda_m, the auxiliary Euler factors and
// the pair condition they feed, twisted long sums, and the exact L^2
// short-interval statistic.

#include <vector>

#include "zi/ideal_table.hpp"
#include "zi/multfn.hpp"
#include "zi/report.hpp"
#include "zi/sector.hpp"

namespace zi {

struct ShortIntervalConfig {
    i64 X = 0;  // even
    i64 h = 1;  // 1 <= h < X
    Sector J = Sector::full();
    int T = 1;
    MultFn f = constant_one();
    std::vector<int> m_list;
};

struct ModeL2 {
    int m;
    cplx weight;   // b_m(J) for the sectorial statistic, 1 for the unrestricted one
    double value;  // (2/X) int_{X/2}^{X} |weight S_{f lambda_m}(x; h) / h|^2 dx
};

struct L2Report {
    i64 X = 0;
    i64 h = 0;
    double value = 0.0;
    std::vector<ModeL2> decomposition;
};

/// g_m(n) = sum_{N a = n} f(a) lambda_m(a) for n <= N_max.
CompressedFn compress_mode(const MultFn& f, int m, i64 N_max);

struct HFactors {
    double first;   // prod_{p <= X} (1 + (|g(p)| - 1)^2 / p)
    double second;  // prod_{p <= X} (1 + (|g(p)| - 1) / p)
};
HFactors h_factor(const CompressedFn& g, i64 X);
/// first against log X and second against 1.
std::vector<BoundReport> h_factor_reports(const CompressedFn& g, i64 X, int m);

struct H1Result {
    double lhs;      // sum |f(p) lambda_m(p) + f(pbar) lambda_m(pbar)| / N p
    double rhs_sum;  // sum 1 / N p
    double best_A;   // lhs / rhs_sum, or 0 if there are no primes in range
    double slack;    // 1 / log z
};

/// Both sums run over split prime ideals p != pbar with z < N p <= w; each
/// member of a conjugate pair contributes its own term.
H1Result h1_check(const MultFn& f, int m, double z, double w);

/// sum_{N a <= Z} f(a) lambda_m(a) N a^{-i t0} from values over the table.
cplx twisted_long_sum(const IdealTable& table, std::span<const cplx> values, int m, double t0, double Z);
/// sum_{n <= Z} g(n) n^{-i t0}.
cplx twisted_long_sum(const CompressedFn& g, double t0, double Z);
/// Streamed: compresses f lambda_m up to Z, then sums.
cplx twisted_long_sum(const MultFn& f, int m, double t0, double Z);

/// (2/X) sum_{n = X/2}^{X-1} |W(n) / h|^2 with W(n) = sum_{N = n+1}^{n+h} d(N):
/// the exact integral of the piecewise-constant window sum over [X/2, X].
double l2_from_array(std::span<const cplx> d, i64 X, i64 h);

/// Window sums W(n) for n = X/2 .. X-1, by a sliding window re-seeded
/// every kReductionChunk steps.
std::vector<cplx> window_sums(std::span<const cplx> d, i64 X, i64 h);

/// (2/X) int_{X/2}^{X} |(S_{f,J}(x;h) - delta_J S_f(x;h)) / h|^2 dx, with
/// per-mode terms |b_m|^2-weighted for every m in cfg.m_list.
L2Report l2_statistic(const ShortIntervalConfig& cfg);

/// (2/X) int_{X/2}^{X} |S_f(x;h) / h|^2 dx; modes are the statistics of f lambda_m.
L2Report l2_unrestricted(const ShortIntervalConfig& cfg);

} // namespace zi
