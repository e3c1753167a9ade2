#include "zi/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "zi/errors.hpp"
#include "zi/kernels.hpp"

namespace zi {

namespace {

i64 mulmod(i64 a, i64 b, i64 m) {
    return static_cast<i64>(static_cast<__int128>(a) * b % m);
}

i64 powmod(i64 base, i64 exp, i64 m) {
    i64 result = 1 % m;
    base %= m;
    if (base < 0) base += m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

// ceil(sqrt(n)) for n >= 0
i64 isqrt_ceil(i64 n) {
    i64 r = isqrt(n);
    return r * r == n ? r : r + 1;
}

bool kind_less(const PrimeIdeal& a, const PrimeIdeal& b) {
    if (a.norm != b.norm) return a.norm < b.norm;
    return a.kind < b.kind;
}

} // namespace

CanonicalGenerator::CanonicalGenerator(i64 re, i64 im) : re_(re), im_(im) {
    if (re < 1 || im < 0)
        throw PreconditionError("canonical generator needs re >= 1 and im >= 0, got (" +
                                std::to_string(re) + ", " + std::to_string(im) + ")");
}

std::string_view to_string(PrimeKind kind) {
    switch (kind) {
    case PrimeKind::Ramified: return "ramified";
    case PrimeKind::SplitPrimary: return "split_primary";
    case PrimeKind::SplitConjugate: return "split_conjugate";
    case PrimeKind::Inert: return "inert";
    }
    return "?";
}

CanonicalGenerator canonicalize(GaussInt z) {
    if (z.re == 0 && z.im == 0) throw PreconditionError("canonicalize: zero has no ideal");
    // rotate by i (re, im) -> (-im, re) until re >= 1, im >= 0
    for (int k = 0; k < 4; ++k) {
        if (z.re >= 1 && z.im >= 0) return {z.re, z.im};
        z = {-z.im, z.re};
    }
    throw PreconditionError("canonicalize: unreachable");
}

double ideal_arg(const CanonicalGenerator& g) {
    return std::atan2(static_cast<double>(g.im()), static_cast<double>(g.re()));
}

CanonicalGenerator conjugate_ideal(const CanonicalGenerator& g) {
    return canonicalize(g.value().conj());
}

double dist_quarter_turn(double theta) {
    double r = std::fmod(theta, kHalfPi);
    if (r < 0) r += kHalfPi;
    return std::min(r, kHalfPi - r);
}

i64 isqrt(i64 n) {
    if (n <= 0) return 0;
    auto r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::vector<i64> rational_primes_up_to(i64 n) {
    std::vector<i64> out;
    if (n < 2) return out;
    out.push_back(2);
    // composite[i] refers to 2i + 1
    const i64 half = (n - 1) / 2;
    std::vector<bool> composite(static_cast<std::size_t>(half + 1), false);
    for (i64 i = 1; i <= half; ++i) {
        if (composite[static_cast<std::size_t>(i)]) continue;
        const i64 p = 2 * i + 1;
        out.push_back(p);
        for (i64 j = (p * p - 1) / 2; j <= half; j += p) composite[static_cast<std::size_t>(j)] = true;
    }
    return out;
}

i64 sqrt_mod(i64 a, i64 p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) return 0;
    if (powmod(a, (p - 1) / 2, p) != 1)
        throw PreconditionError("sqrt_mod: " + std::to_string(a) + " is not a square mod " + std::to_string(p));
    // p - 1 = q * 2^s with q odd
    i64 q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    i64 z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    i64 m = s;
    i64 c = powmod(z, q, p);
    i64 t = powmod(a, q, p);
    i64 r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        i64 i = 0;
        i64 tt = t;
        while (tt != 1) {
            tt = mulmod(tt, tt, p);
            ++i;
        }
        i64 b = c;
        for (i64 j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

GaussInt two_squares(i64 p) {
    if (p % 4 != 1) throw PreconditionError("two_squares: p must be 1 mod 4, got " + std::to_string(p));
    i64 r0 = p;
    i64 r1 = sqrt_mod(p - 1, p);
    if (2 * r1 < p) r1 = p - r1;
    const i64 bound = isqrt(p);
    while (r1 > bound) {
        i64 r2 = r0 % r1;
        r0 = r1;
        r1 = r2;
    }
    const i64 a = r1;
    const i64 b2 = p - a * a;
    const i64 b = isqrt(b2);
    if (b * b != b2) throw PreconditionError("two_squares: Cornacchia failed for " + std::to_string(p));
    return a > b ? GaussInt{a, b} : GaussInt{b, a};
}

std::vector<PrimeIdeal> prime_ideal_sieve(i64 max_norm) {
    if (max_norm < 2) throw PreconditionError("prime_ideal_sieve: need X >= 2");
    std::vector<PrimeIdeal> out;
    for (i64 p : rational_primes_up_to(max_norm)) {
        if (p == 2) {
            out.push_back({{1, 1}, PrimeKind::Ramified, 2, 2});
        } else if (p % 4 == 1) {
            const GaussInt ab = two_squares(p);
            out.push_back({{ab.re, ab.im}, PrimeKind::SplitPrimary, p, p});
            out.push_back({{ab.im, ab.re}, PrimeKind::SplitConjugate, p, p});
        } else if (p <= max_norm / p) {
            out.push_back({{p, 0}, PrimeKind::Inert, p * p, p});
        }
    }
    std::stable_sort(out.begin(), out.end(), kind_less);
    return out;
}

i64 count_ideals(i64 x) {
    i64 count = 0;
    for (i64 re = 1; re * re <= x; ++re) count += isqrt(x - re * re) + 1;
    return count;
}

IdealStream::IdealStream(i64 max_norm, i64 block_norms) : max_norm_(max_norm), block_(block_norms) {
    if (block_norms < 1) throw PreconditionError("IdealStream: block size must be positive");
}

bool IdealStream::next_block(std::vector<IdealRecord>& out) {
    out.clear();
    if (next_lo_ > max_norm_) return false;
    const i64 lo = next_lo_;
    const i64 hi = std::min(max_norm_, lo + block_ - 1);
    next_lo_ = hi + 1;
    for (i64 re = 1; re * re <= hi; ++re) {
        const i64 r2 = re * re;
        const i64 im_lo = lo - r2 <= 0 ? 0 : isqrt_ceil(lo - r2);
        const i64 im_hi = isqrt(hi - r2);
        for (i64 im = im_lo; im <= im_hi; ++im)
            out.push_back({r2 + im * im, static_cast<std::int32_t>(re), static_cast<std::int32_t>(im)});
    }
    // same norm: increasing argument, i.e. increasing im
    std::sort(out.begin(), out.end(), [](const IdealRecord& a, const IdealRecord& b) {
        return a.norm != b.norm ? a.norm < b.norm : a.im < b.im;
    });
    return true;
}

std::vector<IdealRecord> enumerate_ideals(i64 max_norm) {
    std::vector<IdealRecord> all;
    if (max_norm < 1) return all;
    all.reserve(static_cast<std::size_t>(count_ideals(max_norm)));
    IdealStream stream(max_norm);
    std::vector<IdealRecord> block;
    while (stream.next_block(block)) all.insert(all.end(), block.begin(), block.end());
    return all;
}

IdealFactorizer::IdealFactorizer(i64 max_norm) : max_norm_(std::max<i64>(max_norm, 2)) {
    if (max_norm_ > std::numeric_limits<std::uint32_t>::max())
        throw PreconditionError("IdealFactorizer: table bound exceeds 32-bit range");
    const auto n = static_cast<std::size_t>(max_norm_);
    spf_.assign(n + 1, 0);
    for (std::size_t i = 2; i <= n; ++i) {
        if (spf_[i] != 0) continue;
        spf_[i] = static_cast<std::uint32_t>(i);
        if (i > n / i) continue;
        for (std::size_t j = i * i; j <= n; j += i)
            if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
    }
    primes_ = prime_ideal_sieve(max_norm_);
    std::vector<std::pair<i64, std::uint32_t>> firsts;
    for (std::uint32_t i = 0; i < primes_.size(); ++i) {
        const auto& p = primes_[i];
        if (p.kind != PrimeKind::SplitConjugate) firsts.emplace_back(p.rational_prime, i);
    }
    std::sort(firsts.begin(), firsts.end());
    for (auto [p, idx] : firsts) {
        rational_.push_back(p);
        first_index_.push_back(idx);
    }
}

std::uint32_t IdealFactorizer::index_of(i64 rational_prime, PrimeKind kind) const {
    auto it = std::lower_bound(rational_.begin(), rational_.end(), rational_prime);
    if (it == rational_.end() || *it != rational_prime)
        throw PreconditionError("IdealFactorizer: no prime ideal above " + std::to_string(rational_prime));
    std::uint32_t idx = first_index_[static_cast<std::size_t>(it - rational_.begin())];
    // conjugate sits right after the primary (same norm, kind order)
    return kind == PrimeKind::SplitConjugate ? idx + 1 : idx;
}

void IdealFactorizer::factor_refs(const CanonicalGenerator& g, std::vector<FactorRef>& out) const {
    out.clear();
    i64 n = g.norm();
    if (n > max_norm_) throw PreconditionError("IdealFactorizer: norm " + std::to_string(n) + " beyond table");
    GaussInt z = g.value();
    while (n > 1) {
        const i64 p = spf_[static_cast<std::size_t>(n)];
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (p == 2) {
            out.push_back({index_of(2, PrimeKind::Ramified), e});
        } else if (p % 4 == 3) {
            out.push_back({index_of(p, PrimeKind::Inert), e / 2});
        } else {
            const std::uint32_t primary = index_of(p, PrimeKind::SplitPrimary);
            const GaussInt pi = primes_[primary].generator.value();
            // divide by pi while z * conj(pi) = 0 mod p
            int k = 0;
            while (k < e) {
                const GaussInt w = z * pi.conj();
                if (w.re % p != 0 || w.im % p != 0) break;
                z = {w.re / p, w.im / p};
                ++k;
            }
            if (k > 0) out.push_back({primary, k});
            if (e - k > 0) out.push_back({primary + 1, e - k});
        }
    }
}

IdealFactorization IdealFactorizer::factor(const CanonicalGenerator& g) const {
    std::vector<FactorRef> refs;
    factor_refs(g, refs);
    IdealFactorization fac;
    for (auto r : refs) fac.factors.push_back({primes_[r.prime_index], r.exponent});
    std::sort(fac.factors.begin(), fac.factors.end(),
              [](const PrimePower& a, const PrimePower& b) { return kind_less(a.prime, b.prime); });
    return fac;
}

IdealFactorization factor_ideal(const CanonicalGenerator& g) {
    IdealFactorization fac;
    i64 n = g.norm();
    GaussInt z = g.value();
    auto take = [&](i64 p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e == 0) return;
        if (p == 2) {
            fac.factors.push_back({{{1, 1}, PrimeKind::Ramified, 2, 2}, e});
        } else if (p % 4 == 3) {
            fac.factors.push_back({{{p, 0}, PrimeKind::Inert, p * p, p}, e / 2});
        } else {
            const GaussInt pi = two_squares(p);
            int k = 0;
            while (k < e) {
                const GaussInt w = z * pi.conj();
                if (w.re % p != 0 || w.im % p != 0) break;
                z = {w.re / p, w.im / p};
                ++k;
            }
            if (k > 0) fac.factors.push_back({{{pi.re, pi.im}, PrimeKind::SplitPrimary, p, p}, k});
            if (e - k > 0) fac.factors.push_back({{{pi.im, pi.re}, PrimeKind::SplitConjugate, p, p}, e - k});
        }
    };
    for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) take(p);
    if (n > 1) take(n);
    std::sort(fac.factors.begin(), fac.factors.end(),
              [](const PrimePower& a, const PrimePower& b) { return kind_less(a.prime, b.prime); });
    return fac;
}

CanonicalGenerator reconstruct(const IdealFactorization& fac) {
    GaussInt z{1, 0};
    for (const auto& pp : fac.factors)
        for (int k = 0; k < pp.exponent; ++k) z = z * pp.prime.generator.value();
    return canonicalize(z);
}

i64 wedge_count(double theta, double delta, double lo, double hi) {
    if (!(theta >= 0.0 && theta < kHalfPi)) throw PreconditionError("wedge_count: need 0 <= theta < pi/2");
    if (!(hi > lo)) return 0;
    const i64 lo_n = lo < 0 ? 0 : static_cast<i64>(std::floor(lo));
    const i64 hi_n = static_cast<i64>(std::floor(hi));
    return parallel::wedge_count(theta, delta, lo_n, hi_n);
}

} // namespace zi
