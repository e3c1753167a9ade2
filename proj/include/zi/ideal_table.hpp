#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "zi/gaussian.hpp"
#include "zi/summation.hpp"

namespace zi {

class MultFn;

// Upper bound, in bytes, on any single table this library allocates
// (ideal tables, norm-compressed arrays). Exceeding it raises ResourceError.
void set_memory_budget(std::size_t bytes);
std::size_t memory_budget();
void check_memory(std::size_t bytes, const char* what);

// Every ideal of norm <= max_norm in enumeration order, with its
// factorization stored once so that any multiplicative function can be
// evaluated over the whole range in a single product pass.
class IdealTable {
public:
    explicit IdealTable(i64 max_norm);

    i64 max_norm() const { return max_norm_; }
    std::size_t size() const { return ideals_.size(); }
    std::span<const IdealRecord> ideals() const { return ideals_; }
    const IdealFactorizer& factorizer() const { return factorizer_; }
    const std::vector<PrimeIdeal>& primes() const { return factorizer_.primes(); }

    // Number of ideals with norm <= x.
    std::size_t count_upto(double x) const;
    // Index range [first, last) of ideals with lo < N <= hi.
    std::pair<std::size_t, std::size_t> window(double lo, double hi) const;

    IdealFactorization factorization(std::size_t i) const;

    // f(a) for every ideal in table order. evaluate uses the OpenMP kernel,
    // evaluate_serial the reference kernel.
    std::vector<cplx> evaluate(const MultFn& f) const;
    std::vector<cplx> evaluate_serial(const MultFn& f) const;

private:
    struct PrimePowerTable {
        std::vector<std::uint32_t> offsets;
        std::vector<cplx> values;
    };
    PrimePowerTable prime_powers(const MultFn& f) const;

    i64 max_norm_;
    IdealFactorizer factorizer_;
    std::vector<IdealRecord> ideals_;
    std::vector<std::uint32_t> offsets_;
    std::vector<std::uint32_t> prime_index_;
    std::vector<std::int32_t> exponent_;
};

} // namespace zi
