#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include "oracles.hpp"
#include "zi/errors.hpp"
#include "zi/gaussian.hpp"
#include "zi/ideal_table.hpp"
#include "zi/multfn.hpp"
#include "zi/sector.hpp"

using namespace zi;

namespace {

std::function<cplx(oracle::Z)> as_fn(const MultFn& f) {
    return [f](oracle::Z z) { return eval(f, CanonicalGenerator(z.re, z.im)); };
}

PrimeIdeal prime_above(i64 p, PrimeKind kind) {
    for (const auto& q : prime_ideal_sieve(std::max<i64>(p * p, 2)))
        if (q.rational_prime == p && q.kind == kind) return q;
    FAIL("no such prime");
    return prime_ideal_sieve(2).front();
}

// f(p) = a, f(p^2) = b, zero above, same at every prime
MultFn quadratic_rule(cplx a, cplx b) {
    return MultFn("quad", [a, b](const PrimeIdeal&, int k) { return k == 1 ? a : k == 2 ? b : cplx{}; }, false);
}

} // namespace

TEST_CASE("eval examples") {
    CHECK(eval(constant_one(), CanonicalGenerator(7, 3)) == cplx(1.0));
    const cplx v = eval(angular_character(1), CanonicalGenerator(1, 1));
    CHECK(std::abs(v - cplx(-1.0)) < 1e-15);
    CHECK(eval(mobius(), CanonicalGenerator(3, 4)) == cplx(0.0));
    CHECK(eval(mobius(), CanonicalGenerator(1, 0)) == cplx(1.0));
    CHECK(eval(mobius(), CanonicalGenerator(3, 0)) == cplx(-1.0));
    CHECK(eval(mobius(), CanonicalGenerator(1, 3)) == cplx(1.0));  // (1+i)(2+i)
}

TEST_CASE("convolution examples") {
    const auto mu1 = convolve(mobius(), constant_one());
    CHECK(std::abs(eval(mu1, CanonicalGenerator(2, 0)) - 0.0) == 0.0);  // (1+i)^2 ~ (2)
    const auto d2 = convolve(constant_one(), constant_one());
    const auto p = prime_above(5, PrimeKind::SplitPrimary);
    CHECK(d2.at(p, 2) == cplx(3.0));
    CHECK(d2.at(p, 2).real() == d_kappa(2.0, 2));
}

TEST_CASE("convolution matches divisor sums") {
    const i64 X = 10000;
    const auto by_norm = oracle::ideals_by_norm(X);
    const auto f = random_multiplicative(11, RandomValues::UnitCircle, false);
    const auto g = random_multiplicative(12, RandomValues::Sign, false);
    const auto fg = convolve(f, g);
    const auto F = as_fn(f), G = as_fn(g);
    IdealTable table(X);
    const auto vals = table.evaluate(fg);
    std::size_t i = 0, checked = 0;
    double worst = 0.0;
    for (const auto& rec : table.ideals()) {
        const cplx want = oracle::convolution({rec.re, rec.im}, F, G, by_norm);
        worst = std::max(worst, std::abs(vals[i++] - want));
        ++checked;
    }
    CHECK(checked == static_cast<std::size_t>(oracle::lattice_count(X)));
    CHECK(worst < 1e-11);
}

TEST_CASE("convolution is commutative and associative") {
    const i64 X = 1000;
    const auto f = random_multiplicative(1, RandomValues::UnitCircle, false);
    const auto g = random_multiplicative(2, RandomValues::UnitCircle, false);
    const auto h = random_multiplicative(3, RandomValues::Sign, false);
    IdealTable table(X);
    const auto a = table.evaluate(convolve(f, g));
    const auto b = table.evaluate(convolve(g, f));
    const auto c = table.evaluate(convolve(convolve(f, g), h));
    const auto d = table.evaluate(convolve(f, convolve(g, h)));
    for (std::size_t i = 0; i < table.size(); ++i) {
        CHECK(std::abs(a[i] - b[i]) < 1e-12);
        CHECK(std::abs(c[i] - d[i]) < 1e-11);
    }
    // Moebius inversion
    const auto e = table.evaluate(convolve(mobius(), constant_one()));
    CHECK(e[0] == cplx(1.0));
    for (std::size_t i = 1; i < table.size(); ++i) CHECK(e[i] == cplx(0.0));
}

TEST_CASE("lambda_f recursion") {
    const auto p = prime_above(13, PrimeKind::SplitConjugate);
    const double L = std::log(13.0);

    SUBCASE("completely multiplicative is geometric") {
        const auto f = random_multiplicative(9, RandomValues::UnitCircle, true);
        const auto lam = lambda_f(f, p, 6);
        const cplx fp = f.at(p, 1);
        for (int k = 1; k <= 6; ++k) CHECK(std::abs(lam[k - 1] - std::pow(fp, k) * L) < 1e-12);
    }
    SUBCASE("f = 1 gives von Mangoldt") {
        for (const auto& v : lambda_f(constant_one(), p, 5)) CHECK(std::abs(v - L) < 1e-12);
    }
    SUBCASE("k = 2 closed form and Cauchy-integral log derivative") {
        const cplx a{0.3, -0.2}, b{-0.15, 0.25};
        const auto lam = lambda_f(quadratic_rule(a, b), p, 4);
        CHECK(std::abs(lam[1] - (2.0 * b - a * a) * L) < 1e-13);
        // coefficients of log(1 + a z + b z^2) on |z| = r; Lambda(p^m) = m c_m log Np
        const int K = 512;
        const double r = 0.5;
        for (int m = 1; m <= 4; ++m) {
            cplx c{};
            for (int j = 0; j < K; ++j) {
                const cplx z = std::polar(r, 2.0 * std::numbers::pi * j / K);
                c += std::log(1.0 + a * z + b * z * z) * std::pow(z, -m);
            }
            c /= static_cast<double>(K);
            CHECK(std::abs(lam[m - 1] - static_cast<double>(m) * c * L) < 1e-10);
        }
    }
}

TEST_CASE("check_lambda_bound") {
    const auto ok = check_lambda_bound(random_multiplicative(4, RandomValues::UnitCircle, true), 1.0, 5000);
    CHECK(ok.ok);
    CHECK(ok.worst_ratio == doctest::Approx(1.0));

    const auto bad = MultFn("bad", [](const PrimeIdeal& p, int k) {
        if (p.kind == PrimeKind::Ramified && k == 2) return cplx(10.0);
        return cplx(k == 1 ? 1.0 : 0.0);
    }, false);
    const auto res = check_lambda_bound(bad, 1.0, 100);
    CHECK_FALSE(res.ok);
    REQUIRE(res.first_violation.has_value());
    CHECK(res.first_violation->prime.generator == CanonicalGenerator(1, 1));
    CHECK(res.first_violation->exponent == 2);
    CHECK(res.worst_ratio >= 19.0 - 1e-12);

    CHECK(check_lambda_bound(convolve(constant_one(), constant_one()), 2.0, 10000).ok);
    CHECK_FALSE(check_lambda_bound(convolve(constant_one(), constant_one()), 1.5, 100).ok);
}

TEST_CASE("lambda bound implies |f| <= d_kappa") {
    const double kappa = 2.0;
    const auto f = random_multiplicative(21, RandomValues::UnitCircle, true);
    const auto f2 = convolve(f, random_multiplicative(22, RandomValues::Sign, true));
    REQUIRE(check_lambda_bound(f2, kappa, 5000).ok);
    IdealTable table(5000);
    const auto vals = table.evaluate(f2);
    for (std::size_t i = 0; i < table.size(); ++i)
        CHECK(std::abs(vals[i]) <= d_kappa(kappa, table.factorization(i)) + 1e-12);
}

TEST_CASE("d_kappa") {
    const auto fac = factor_ideal(CanonicalGenerator(7, 24));  // (2+i)^4 up to units
    CHECK(d_kappa(1.0, fac) == 1.0);
    CHECK(d_kappa(2.0, 2) == 3.0);
    CHECK(d_kappa(1.5, 1) == 1.5);
    CHECK(d_kappa(1.5, 2) == doctest::Approx(1.5 * 2.5 / 2));
    CHECK(d_kappa(3.0, 4) == doctest::Approx(15.0));
    const auto d = divisor_kappa(2.0);
    CHECK(eval(d, CanonicalGenerator(4, 0)).real() == 5.0);  // (1+i)^4
}

TEST_CASE("smooth-rough split reproduces f") {
    const auto sl = smooth_rough_split(mobius(), 2.0);
    const auto pa = prime_above(2, PrimeKind::Ramified);
    const auto pb = prime_above(5, PrimeKind::SplitPrimary);
    CHECK(sl.smooth.at(pa, 1) == mobius().at(pa, 1));
    CHECK(sl.smooth.at(pb, 1) == cplx(0.0));
    CHECK(sl.rough.at(pb, 1) == mobius().at(pb, 1));
    CHECK(sl.rough.at(pa, 1) == cplx(0.0));

    const i64 X = 10000;
    IdealTable table(X);
    const auto f = random_multiplicative(33, RandomValues::UnitCircle, false);
    const auto fv = table.evaluate(f);
    for (double y : {2.0, 10.0, 100.0}) {
        const auto split = smooth_rough_split(f, y);
        const auto sv = table.evaluate(split.smooth);
        const auto conv = table.evaluate(convolve(split.smooth, split.rough));
        for (std::size_t i = 0; i < table.size(); ++i) {
            CHECK(std::abs(conv[i] - fv[i]) < 1e-12);
            const auto fac = table.factorization(i);
            bool friable = true;
            for (const auto& pp : fac.factors) friable = friable && pp.prime.norm <= y;
            if (!friable) CHECK(sv[i] == cplx(0.0));
        }
    }
}

TEST_CASE("g*h decomposition") {
    const auto pa = prime_above(2, PrimeKind::Ramified);
    const auto mu = gh_decompose(mobius());
    CHECK(mu.h.at(pa, 2) == cplx(-1.0));
    CHECK(mu.h.at(pa, 1) == cplx(0.0));
    CHECK(mu.g.completely_multiplicative());

    const auto cm = gh_decompose(random_multiplicative(5, RandomValues::UnitCircle, true));
    IdealTable table(10000);
    const auto hv = table.evaluate(cm.h);
    CHECK(hv[0] == cplx(1.0));
    for (std::size_t i = 1; i < table.size(); ++i) CHECK(std::abs(hv[i]) < 1e-15);

    const auto f = random_multiplicative(6, RandomValues::UnitCircle, false);
    const auto gh = gh_decompose(f);
    const auto fv = table.evaluate(f);
    const auto conv = table.evaluate(convolve(gh.g, gh.h));
    for (std::size_t i = 0; i < table.size(); ++i) CHECK(std::abs(conv[i] - fv[i]) < 1e-12);
    for (const auto& p : table.primes()) {
        CHECK(gh.h.at(p, 1) == cplx(0.0));
        for (int k = 2; std::pow(double(p.norm), k) <= 10000; ++k) CHECK(std::abs(gh.h.at(p, k)) <= 2.0 + 1e-12);
    }
}

TEST_CASE("h_tail") {
    const i64 X = 20000;
    IdealTable table(X);
    CHECK(h_tail(table, unit_indicator(), 1.0, X) == 0.0);
    const auto h = gh_decompose(mobius()).h;
    // direct oracle: |h| over all ideals from the oracle factorization
    const auto primes = oracle::prime_ideals(X);
    const auto hv = table.evaluate(h);
    double prev = INFINITY;
    for (double z : {1.0, 3.0, 10.0, 100.0, 1000.0}) {
        double want = 0.0;
        std::size_t i = 0;
        for (const auto& rec : table.ideals()) {
            if (rec.norm > z) want += std::abs(hv[i]) / double(rec.norm);
            ++i;
        }
        const double got = h_tail(table, h, z, X);
        CHECK(got == doctest::Approx(want).epsilon(1e-12));
        CHECK(got <= prev);
        prev = got;
    }
    // h from mu: h(p^2) = -1 and h(p^k) = 0 for k >= 3
    std::size_t i = 0;
    for (const auto& rec : table.ideals()) {
        const auto fac = oracle::factor({rec.re, rec.im}, primes);
        bool squarefull = true;
        for (const auto& [p, e] : fac) squarefull = squarefull && e == 2;
        CHECK(std::abs(hv[i++]) == (squarefull ? 1.0 : 0.0));
    }
}

TEST_CASE("norm compression") {
    const i64 X = 2000;
    const auto one = norm_compress_streaming(constant_one(), X);
    CHECK(one[5] == cplx(2.0));
    CHECK(one[9] == cplx(1.0));
    CHECK(one[25] == cplx(3.0));
    CHECK(one[3] == cplx(0.0));
    const auto by_norm = oracle::ideals_by_norm(X);
    for (i64 n = 1; n <= X; ++n) {
        auto it = by_norm.find(n);
        CHECK(one[n].real() == (it == by_norm.end() ? 0.0 : double(it->second.size())));
    }

    IdealTable table(X);
    const auto f = random_multiplicative(8, RandomValues::UnitCircle, false);
    const auto a = norm_compress(table, f, X);
    const auto b = norm_compress_streaming(f, X);
    for (i64 n = 1; n <= X; ++n) CHECK(std::abs(a[n] - b[n]) < 1e-13);
    CHECK(std::abs(a[10] - a[2] * a[5]) < 1e-13);
    for (i64 m = 1; m <= 40; ++m)
        for (i64 n = 1; n * m <= X && n <= 40; ++n)
            if (std::gcd(m, n) == 1) CHECK(std::abs(a[m * n] - a[m] * a[n]) < 1e-12);

    for (int m : {-3, 1, 2}) {
        const auto fl = pointwise_product(f, angular_character(m));
        const auto c = norm_compress(table, fl, X);
        const auto vals = table.evaluate(fl);
        for (double x : {10.0, 99.5, 1000.0, 2000.0}) {
            cplx s{};
            for (i64 n = 1; n <= x; ++n) s += c[n];
            CHECK(std::abs(s - partial_sum(table, vals, x)) < 1e-10);
        }
    }

    const auto budget = memory_budget();
    set_memory_budget(1000);
    CHECK_THROWS_AS(norm_compress_streaming(constant_one(), 100000), ResourceError);
    set_memory_budget(budget);
}

TEST_CASE("angular characters") {
    IdealTable table(5000);
    for (int m : {-5, 1, 2, 7}) {
        const auto lam = angular_character(m);
        for (const auto& rec : table.ideals()) {
            const auto g = rec.generator();
            const cplx prod = eval(lam, g) * eval(lam, conjugate_ideal(g));
            CHECK(std::abs(prod - 1.0) < 1e-12);
            CHECK(std::abs(std::abs(eval(lam, g)) - 1.0) < 1e-13);
        }
    }
}

TEST_CASE("partial and sector sums") {
    IdealTable table(10000);
    const auto ones = table.evaluate(constant_one());
    CHECK(partial_sum(table, ones, 5.0) == cplx(5.0));
    CHECK(partial_sum(table, constant_one(), 5.0) == cplx(5.0));
    CHECK(interval_sum(table, ones, 5.0, 5.0) == cplx(4.0));  // norms 8, 9, 10, 10
    const auto f = random_multiplicative(3, RandomValues::UnitCircle, false);
    const auto v = table.evaluate(f);
    const Sector A = Sector::from_pi_fractions(0, 0.1), B = Sector::from_pi_fractions(0.1, 0.37),
                 C = Sector::from_pi_fractions(0.37, 0.5);
    for (double x : {10.0, 1234.5, 10000.0}) {
        const cplx whole = partial_sum(table, v, x);
        const cplx parts = sector_sum(table, v, A, x) + sector_sum(table, v, B, x) + sector_sum(table, v, C, x);
        CHECK(std::abs(whole - parts) < 1e-10);
        CHECK(std::abs(sector_sum(table, v, Sector::full(), x) - whole) < 1e-10);
        cplx direct{};
        std::size_t i = 0;
        for (const auto& rec : table.ideals()) {
            const double th = std::atan2(double(rec.im), double(rec.re));
            if (rec.norm > x - 300 && rec.norm <= x && th >= B.theta1() && th < B.theta2()) direct += v[i];
            ++i;
        }
        CHECK(std::abs(sector_interval_sum(table, v, B, x - 300, 300) - direct) < 1e-10);
    }
    const auto muv = table.evaluate(mobius());
    CHECK(std::abs(partial_sum(table, muv, 10000.0).real() / 1e4) <= 0.02);
}
