#pragma once

// Lattice-level arithmetic of Z[i]: canonical generators, the prime-ideal
// sieve, norm-ordered ideal enumeration, factorization and wedge counts.

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace zi {

using i64 = std::int64_t;

inline constexpr double kHalfPi = 1.57079632679489661923;

struct GaussInt {
    i64 re = 0;
    i64 im = 0;

    friend constexpr bool operator==(GaussInt, GaussInt) = default;
    friend constexpr GaussInt operator*(GaussInt a, GaussInt b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    constexpr i64 norm() const { return re * re + im * im; }
    constexpr GaussInt conj() const { return {re, -im}; }
};

// The unique generator of a nonzero ideal with 0 <= arg < pi/2, i.e.
// re >= 1 and im >= 0. This is the identity key for ideals.
class CanonicalGenerator {
public:
    // Throws PreconditionError unless re >= 1 and im >= 0.
    CanonicalGenerator(i64 re, i64 im);

    constexpr i64 re() const { return re_; }
    constexpr i64 im() const { return im_; }
    constexpr i64 norm() const { return re_ * re_ + im_ * im_; }
    constexpr GaussInt value() const { return {re_, im_}; }

    friend constexpr bool operator==(const CanonicalGenerator&, const CanonicalGenerator&) = default;
    friend constexpr auto operator<=>(const CanonicalGenerator&, const CanonicalGenerator&) = default;

private:
    i64 re_;
    i64 im_;
};

enum class PrimeKind : std::uint8_t { Ramified = 0, SplitPrimary = 1, SplitConjugate = 2, Inert = 3 };

std::string_view to_string(PrimeKind kind);

struct PrimeIdeal {
    CanonicalGenerator generator;
    PrimeKind kind;
    i64 norm;
    i64 rational_prime;

    friend bool operator==(const PrimeIdeal&, const PrimeIdeal&) = default;
};

struct PrimePower {
    PrimeIdeal prime;
    int exponent;
};

struct IdealFactorization {
    // Sorted by norm, then kind. Empty for the unit ideal.
    std::vector<PrimePower> factors;
};

// One row of a norm-ordered enumeration.
struct IdealRecord {
    i64 norm;
    std::int32_t re;
    std::int32_t im;

    CanonicalGenerator generator() const { return {re, im}; }
};

/// Multiplies z by the unit that moves it into the first quadrant
/// (re >= 1, im >= 0). Throws PreconditionError on z == 0.
CanonicalGenerator canonicalize(GaussInt z);

/// atan2(im, re); lies in [0, pi/2) for every canonical generator.
double ideal_arg(const CanonicalGenerator& g);

CanonicalGenerator conjugate_ideal(const CanonicalGenerator& g);

/// ||theta||_{pi/2}: distance from theta to the nearest multiple of pi/2.
double dist_quarter_turn(double theta);

i64 isqrt(i64 n);

/// Rational primes <= n, ascending (odd-only Eratosthenes).
std::vector<i64> rational_primes_up_to(i64 n);

/// Square root of a modulo an odd prime p by Tonelli-Shanks.
/// Throws PreconditionError if a is not a quadratic residue mod p.
i64 sqrt_mod(i64 a, i64 p);

/// For a prime p = 1 (mod 4), the pair (a, b) with a > b > 0 and
/// a^2 + b^2 = p, found by Cornacchia's algorithm from sqrt(-1) mod p.
GaussInt two_squares(i64 p);

/// Every prime ideal with norm <= max_norm, sorted by norm then kind.
/// Throws PreconditionError if max_norm < 2.
std::vector<PrimeIdeal> prime_ideal_sieve(i64 max_norm);

/// Number of canonical generators with norm <= x, in O(sqrt x).
i64 count_ideals(i64 x);

/// Streams the canonical generators of norm <= max_norm in nondecreasing
/// norm order (ties by increasing argument), one block of norms at a time.
class IdealStream {
public:
    explicit IdealStream(i64 max_norm, i64 block_norms = i64{1} << 16);

    // Fills `out` with the next block; returns false once exhausted.
    bool next_block(std::vector<IdealRecord>& out);

private:
    i64 max_norm_;
    i64 block_;
    i64 next_lo_ = 1;
};

std::vector<IdealRecord> enumerate_ideals(i64 max_norm);

/// Factorization of ideals with norm up to a fixed bound, backed by a
/// smallest-prime-factor table built once.
class IdealFactorizer {
public:
    explicit IdealFactorizer(i64 max_norm);

    i64 max_norm() const { return max_norm_; }
    const std::vector<PrimeIdeal>& primes() const { return primes_; }

    // (index into primes(), exponent) pairs, unordered. Requires norm <= max_norm().
    struct FactorRef {
        std::uint32_t prime_index;
        std::int32_t exponent;
    };
    void factor_refs(const CanonicalGenerator& g, std::vector<FactorRef>& out) const;

    IdealFactorization factor(const CanonicalGenerator& g) const;

    // Index of the prime ideal above the rational prime p with the given kind.
    std::uint32_t index_of(i64 rational_prime, PrimeKind kind) const;

private:
    i64 max_norm_;
    std::vector<std::uint32_t> spf_;
    std::vector<PrimeIdeal> primes_;
    // rational primes (ascending) and the index of the first prime ideal above each
    std::vector<i64> rational_;
    std::vector<std::uint32_t> first_index_;
};

/// Factorization by trial division; no table, for one-off use.
IdealFactorization factor_ideal(const CanonicalGenerator& g);

/// Product of the factors, re-canonicalized.
CanonicalGenerator reconstruct(const IdealFactorization& fac);

/// #{canonical z : lo < N(z) <= hi, ||arg z - theta||_{pi/2} <= delta}.
/// Requires 0 <= theta < pi/2.
i64 wedge_count(double theta, double delta, double lo, double hi);

} // namespace zi
