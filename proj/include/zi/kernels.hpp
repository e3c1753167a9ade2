#pragma once

// Data-parallel inner loops. Every kernel exists twice with identical
// signatures: zi::serial (the reference) and zi::parallel (OpenMP). The
// parallel versions use fixed chunking, so their results are bit for bit
// the same at any thread count.

#include <cstdint>
#include <span>
#include <vector>

#include "zi/gaussian.hpp"
#include "zi/parallel.hpp"
#include "zi/summation.hpp"

namespace zi {

// Per-prime data for distance scans: coefficient a_p, log N p, 1 / N p.
struct PrimeTerms {
    std::vector<cplx> coeff;
    std::vector<double> log_norm;
    std::vector<double> inv_norm;

    std::size_t size() const { return coeff.size(); }
};

// Local Euler factors as polynomials in z = N p^{-s}: factor(z) = sum_k c_k z^k
// (c_0 = 1), or 1 / (1 - c_1 z) when geometric is set.
struct EulerTerms {
    std::vector<double> log_norm;
    std::vector<std::uint32_t> offset;  // coefficients of prime j: [offset[j], offset[j+1])
    std::vector<cplx> coeff;            // c_1, c_2, ...
    std::vector<std::uint8_t> geometric;

    std::size_t size() const { return log_norm.size(); }
};

struct CsrFactors {
    std::span<const std::uint32_t> offsets;  // size n + 1
    std::span<const std::uint32_t> prime_index;
    std::span<const std::int32_t> exponent;
};

struct PrimePowerValues {
    std::span<const std::uint32_t> offsets;  // per prime index; value of p^k at offsets[p] + k - 1
    std::span<const cplx> values;
};

// Straightforward single-threaded definitions. Kept as the test oracle for
// the parallel kernels; they sum in natural order and evaluate every phase
// directly, so agreement is checked to rounding, not bitwise.
namespace serial {

i64 wedge_count(double theta, double delta, i64 lo, i64 hi);
std::vector<cplx> evaluate_products(const CsrFactors& factors, const PrimePowerValues& pp);
cplx chunked_sum(std::span<const cplx> values);
double abs_over_norm_sum(std::span<const cplx> values, std::span<const IdealRecord> ideals);
cplx sector_sum(std::span<const cplx> values, std::span<const IdealRecord> ideals, double theta1, double theta2);
cplx twisted_sum(std::span<const cplx> values, std::span<const IdealRecord> ideals, int m, double t);
std::vector<cplx> twisted_sums(std::span<const cplx> values, std::span<const IdealRecord> ideals, int max_m);
std::vector<double> distance_grid(const PrimeTerms& terms, double kappa, double t0, double dt, std::size_t count);
std::vector<cplx> euler_grid(const EulerTerms& terms, double sigma, double t0, double dt, std::size_t count);

} // namespace serial

// OpenMP kernels. Output depends only on the inputs, never on the worker
// count: reductions run over fixed chunks of kReductionChunk elements and
// the chunk partials are combined in chunk order.
namespace parallel {

/// #{canonical z : lo < N z <= hi, ||arg z - theta||_{pi/2} <= delta}.
i64 wedge_count(double theta, double delta, i64 lo, i64 hi);

/// f(a_i) = product of prime-power values over the factorization of ideal i.
std::vector<cplx> evaluate_products(const CsrFactors& factors, const PrimePowerValues& pp);

/// Compensated sum of all values.
cplx chunked_sum(std::span<const cplx> values);

/// sum |values[i]| / N(a_i).
double abs_over_norm_sum(std::span<const cplx> values, std::span<const IdealRecord> ideals);

/// Sum of values whose ideal argument lies in [theta1, theta2).
cplx sector_sum(std::span<const cplx> values, std::span<const IdealRecord> ideals, double theta1, double theta2);

/// sum values[i] * lambda_m(a_i) * N(a_i)^{-i t}.
cplx twisted_sum(std::span<const cplx> values, std::span<const IdealRecord> ideals, int m, double t);

/// Entry m + max_m is sum values[i] * lambda_m(a_i), for m = -max_m..max_m.
std::vector<cplx> twisted_sums(std::span<const cplx> values, std::span<const IdealRecord> ideals, int max_m);

/// D^2(t) = sum_p (kappa - Re(a_p N p^{-i t})) / N p at t = t0 + j dt, j < count.
/// Phases advance by a per-prime rotation, re-seeded exactly every block.
std::vector<double> distance_grid(const PrimeTerms& terms, double kappa, double t0, double dt, std::size_t count);

/// prod_p factor_p(N p^{-(sigma + i t)}) at t = t0 + j dt, j < count.
std::vector<cplx> euler_grid(const EulerTerms& terms, double sigma, double t0, double dt, std::size_t count);

} // namespace parallel

} // namespace zi
