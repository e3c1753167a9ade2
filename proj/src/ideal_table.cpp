#include "zi/ideal_table.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zi/errors.hpp"
#include "zi/kernels.hpp"
#include "zi/multfn.hpp"

namespace zi {

namespace {
std::size_t g_budget = std::size_t{2} << 30;
}

void set_memory_budget(std::size_t bytes) { g_budget = bytes; }
std::size_t memory_budget() { return g_budget; }

void check_memory(std::size_t bytes, const char* what) {
    if (bytes > g_budget)
        throw ResourceError(std::string(what) + ": needs " + std::to_string(bytes) + " bytes, budget is " +
                            std::to_string(g_budget));
}

IdealTable::IdealTable(i64 max_norm) : max_norm_(std::max<i64>(max_norm, 1)), factorizer_(max_norm_) {
    const auto expected = static_cast<std::size_t>(count_ideals(max_norm_));
    check_memory(expected * (sizeof(IdealRecord) + sizeof(cplx) + 4 * sizeof(std::uint32_t)) +
                     static_cast<std::size_t>(max_norm_) * sizeof(std::uint32_t),
                 "IdealTable");
    ideals_.reserve(expected);
    offsets_.reserve(expected + 1);
    offsets_.push_back(0);
    IdealStream stream(max_norm_);
    std::vector<IdealRecord> block;
    std::vector<IdealFactorizer::FactorRef> refs;
    while (stream.next_block(block)) {
        for (const auto& r : block) {
            factorizer_.factor_refs(r.generator(), refs);
            for (auto f : refs) {
                prime_index_.push_back(f.prime_index);
                exponent_.push_back(f.exponent);
            }
            offsets_.push_back(static_cast<std::uint32_t>(prime_index_.size()));
            ideals_.push_back(r);
        }
    }
}

std::size_t IdealTable::count_upto(double x) const {
    if (x < 1) return 0;
    const double fx = std::floor(x);
    auto it = std::upper_bound(ideals_.begin(), ideals_.end(), fx,
                               [](double v, const IdealRecord& r) { return v < static_cast<double>(r.norm); });
    return static_cast<std::size_t>(it - ideals_.begin());
}

std::pair<std::size_t, std::size_t> IdealTable::window(double lo, double hi) const {
    if (std::floor(hi) > static_cast<double>(max_norm_))
        throw PreconditionError("IdealTable: window upper end " + std::to_string(hi) + " beyond table bound " +
                                std::to_string(max_norm_));
    const std::size_t a = count_upto(lo);
    const std::size_t b = count_upto(hi);
    return {a, std::max(a, b)};
}

IdealFactorization IdealTable::factorization(std::size_t i) const {
    IdealFactorization fac;
    for (auto j = offsets_[i]; j < offsets_[i + 1]; ++j)
        fac.factors.push_back({primes()[prime_index_[j]], exponent_[j]});
    std::sort(fac.factors.begin(), fac.factors.end(), [](const PrimePower& a, const PrimePower& b) {
        return a.prime.norm != b.prime.norm ? a.prime.norm < b.prime.norm : a.prime.kind < b.prime.kind;
    });
    return fac;
}

IdealTable::PrimePowerTable IdealTable::prime_powers(const MultFn& f) const {
    PrimePowerTable t;
    const auto& ps = primes();
    t.offsets.reserve(ps.size() + 1);
    for (const auto& p : ps) {
        t.offsets.push_back(static_cast<std::uint32_t>(t.values.size()));
        i64 q = p.norm;
        int k = 1;
        while (true) {
            t.values.push_back(f.at(p, k));
            if (q > max_norm_ / p.norm) break;
            q *= p.norm;
            ++k;
        }
    }
    t.offsets.push_back(static_cast<std::uint32_t>(t.values.size()));
    return t;
}

std::vector<cplx> IdealTable::evaluate(const MultFn& f) const {
    const auto pp = prime_powers(f);
    return parallel::evaluate_products({offsets_, prime_index_, exponent_}, {pp.offsets, pp.values});
}

std::vector<cplx> IdealTable::evaluate_serial(const MultFn& f) const {
    const auto pp = prime_powers(f);
    return serial::evaluate_products({offsets_, prime_index_, exponent_}, {pp.offsets, pp.values});
}

} // namespace zi
