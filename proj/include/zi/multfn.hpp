#pragma once

// Multiplicative functions on the nonzero ideals of Z[i]: construction,
// evaluation, Dirichlet convolution, von Mangoldt coefficients, structural
// decompositions, norm-compression and partial / sector / interval sums.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zi/gaussian.hpp"
#include "zi/ideal_table.hpp"
#include "zi/sector.hpp"
#include "zi/summation.hpp"

namespace zi {

using PrimePowerRule = std::function<cplx(const PrimeIdeal&, int)>;

// A multiplicative function given by its values on prime powers p^k, k >= 1.
// The unit ideal always maps to 1. For completely multiplicative functions
// only rule(p, 1) is ever consulted and p^k maps to rule(p, 1)^k.
class MultFn {
public:
    MultFn(std::string label, PrimePowerRule rule, bool completely_multiplicative);

    // f(p^k); k == 0 gives 1.
    cplx at(const PrimeIdeal& p, int k) const;

    bool completely_multiplicative() const { return completely_multiplicative_; }
    const std::string& label() const { return label_; }

private:
    std::string label_;
    std::shared_ptr<const PrimePowerRule> rule_;
    bool completely_multiplicative_;
};

MultFn constant_one();
// mu(p) = -1, mu(p^k) = 0 for k >= 2.
MultFn mobius();
// The convolution identity: 1 on the unit ideal, 0 elsewhere.
MultFn unit_indicator();
// lambda_m(a) = exp(4 i m arg a).
MultFn angular_character(int m);
// N^{it}: p -> (N p)^{i t}.
MultFn norm_twist(double t);
// d_kappa(p^m) = binomial(kappa + m - 1, m).
MultFn divisor_kappa(double kappa);

enum class RandomValues { Sign, UnitCircle };

// Random multiplicative function keyed by (seed, N p, kind):
//   key = splitmix64(splitmix64(seed) ^ (4 * N p + kind))
// Sign takes -1 when bit 63 of key is set, +1 otherwise; UnitCircle takes
// exp(2 pi i u) with u the top 53 bits of key over 2^53. When not completely
// multiplicative, p^k (k >= 2) uses key_k = splitmix64(key + k) the same way.
MultFn random_multiplicative(std::uint64_t seed, RandomValues kind = RandomValues::Sign,
                             bool completely_multiplicative = true);

// (f g)(a) = f(a) g(a).
MultFn pointwise_product(const MultFn& f, const MultFn& g);

cplx eval(const MultFn& f, const IdealFactorization& fac);
cplx eval(const MultFn& f, const CanonicalGenerator& g, const IdealFactorizer& factorizer);
cplx eval(const MultFn& f, const CanonicalGenerator& g);

// Dirichlet convolution: (f * g)(p^k) = sum_{j=0..k} f(p^j) g(p^{k-j}).
MultFn convolve(const MultFn& f, const MultFn& g);

/// Lambda_f(p^k) for k = 1..k_max, from the coefficient recursion of the
/// logarithmic derivative of the local Euler factor:
///   m f(p^m) = (1 / log N p) sum_{j=1..m} f(p^{m-j}) Lambda_f(p^j).
std::vector<cplx> lambda_f(const MultFn& f, const PrimeIdeal& p, int k_max);

struct LambdaBoundCheck {
    bool ok = true;
    std::optional<PrimePower> first_violation;
    double worst_ratio = 0.0;  // max |Lambda_f(p^k)| / log N p seen
};

/// Checks |Lambda_f(p^k)| <= kappa log N p for all prime powers of norm <= X.
/// Prime powers are visited by increasing prime norm, then exponent.
LambdaBoundCheck check_lambda_bound(const MultFn& f, double kappa, i64 X);

double d_kappa(double kappa, const IdealFactorization& fac);
double d_kappa(double kappa, int exponent);

// s agrees with f on y-friable ideals and vanishes otherwise; l agrees with
// f on y-rough ideals. f = s * l.
struct SmoothRough {
    MultFn smooth;
    MultFn rough;
};
SmoothRough smooth_rough_split(const MultFn& f, double y);

// g completely multiplicative with g(p) = f(p); h(p) = 0 and
// h(p^k) = f(p^k) - f(p) f(p^{k-1}). f = g * h.
struct GhDecomposition {
    MultFn g;
    MultFn h;
};
GhDecomposition gh_decompose(const MultFn& f);

/// sum_{z < N d <= X} |h(d)| / N d.
double h_tail(const IdealTable& table, const MultFn& h, double z, i64 X);

// Norm-compressed function on 1..X: values[n] = sum_{N a = n} f(a);
// values[0] is unused and zero.
struct CompressedFn {
    std::vector<cplx> values;
    std::string source_label;

    i64 max_n() const { return static_cast<i64>(values.size()) - 1; }
    cplx operator[](i64 n) const { return values[static_cast<std::size_t>(n)]; }
};

CompressedFn norm_compress(const IdealTable& table, std::span<const cplx> values, i64 X, std::string label = {});
CompressedFn norm_compress(const IdealTable& table, const MultFn& f, i64 X);
// Single streaming pass over the enumeration, factoring as it goes.
CompressedFn norm_compress_streaming(const MultFn& f, i64 X);
// Same, restricted to ideals whose argument lies in J.
CompressedFn norm_compress_streaming(const MultFn& f, i64 X, const Sector& J);

// Exact sums over the ideal table, with values precomputed by
// IdealTable::evaluate. Windows are lo < N <= hi; sectors are half-open.
cplx partial_sum(const IdealTable& table, std::span<const cplx> values, double x);
cplx interval_sum(const IdealTable& table, std::span<const cplx> values, double x, double h);
cplx sector_sum(const IdealTable& table, std::span<const cplx> values, const Sector& J, double x);
cplx sector_interval_sum(const IdealTable& table, std::span<const cplx> values, const Sector& J, double x, double h);

cplx partial_sum(const IdealTable& table, const MultFn& f, double x);

} // namespace zi
