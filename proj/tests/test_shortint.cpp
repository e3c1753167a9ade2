#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "zi/errors.hpp"
#include "zi/ideal_table.hpp"
#include "zi/multfn.hpp"
#include "zi/random.hpp"
#include "zi/sector.hpp"
#include "zi/sectorial.hpp"
#include "zi/shortint.hpp"
#include "zi/suite.hpp"

using namespace zi;

namespace {

Calibration frozen() { return Calibration::load(std::string(ZI_SOURCE_DIR) + "/data/calibration.txt"); }

HFactors direct_products(const CompressedFn& g, i64 X) {
    HFactors out{1.0, 1.0};
    for (i64 p = 2; p <= X; ++p) {
        if (!oracle::is_prime(p)) continue;
        const double a = std::abs(g[p]);
        out.first *= 1.0 + (a - 1.0) * (a - 1.0) / double(p);
        out.second *= 1.0 + (a - 1.0) / double(p);
    }
    return out;
}

ShortIntervalConfig config(i64 X, i64 h, Sector J, MultFn f) {
    ShortIntervalConfig cfg;
    cfg.X = X;
    cfg.h = h;
    cfg.J = J;
    cfg.f = std::move(f);
    return cfg;
}

} // namespace

TEST_CASE("compress_mode") {
    const auto g0 = compress_mode(constant_one(), 0, 100);
    CHECK(g0[5] == cplx(2.0));
    const auto f = random_multiplicative(1, RandomValues::UnitCircle, false);
    for (int m : {-2, 0, 3}) CHECK(compress_mode(f, m, 100)[3] == cplx(0.0));
    const auto g1 = compress_mode(constant_one(), 1, 100);
    const double want = 2.0 * std::cos(4.0 * std::atan2(4.0, 3.0)) + 1.0;
    CHECK(std::abs(g1[25] - want) < 1e-14);

    // |g_m(n)| <= d(n) and the pair formula at split primes
    const i64 N = 5000;
    const auto g = compress_mode(f, 2, N);
    for (i64 n = 1; n <= N; ++n) {
        int d = 0;
        for (i64 k = 1; k <= n; ++k) d += n % k == 0;
        CHECK(std::abs(g[n]) <= d + 1e-12);
    }
    const auto lam = angular_character(2);
    for (const auto& p : prime_ideal_sieve(N)) {
        if (p.kind != PrimeKind::SplitPrimary) continue;
        const CanonicalGenerator a = p.generator, b = conjugate_ideal(p.generator);
        const cplx la = eval(lam, a);
        CHECK(std::abs(la * eval(lam, b) - 1.0) < 1e-13);
        CHECK(std::abs(g[p.norm] - (eval(f, a) * la + eval(f, b) * std::conj(la))) < 1e-13);
    }

    // compressed-vs-ideal agreement
    const auto fv = random_multiplicative(5, RandomValues::Sign, true);
    IdealTable table(100000);
    const auto vals = table.evaluate(fv);
    for (int m : {-1, 2}) {
        const auto gm = compress_mode(fv, m, 100000);
        for (double Z : {1e3, 1e4, 1e5}) {
            cplx s{};
            for (i64 n = 1; n <= Z; ++n) s += gm[n];
            CHECK(std::abs(s - twisted_long_sum(table, vals, m, 0.0, Z)) < 1e-8);
        }
    }
}

TEST_CASE("h_factor") {
    CompressedFn ones{std::vector<cplx>(1001, cplx(1.0)), "ones"};
    CHECK(h_factor(ones, 1000).first == 1.0);
    CHECK(h_factor(ones, 1000).second == 1.0);

    // f = 1 on SplitPrimary ideals, 0 on every other prime: |g(p)| = 1 at split p, 0 elsewhere
    const auto half = MultFn("half", [](const PrimeIdeal& p, int) {
        return cplx(p.kind == PrimeKind::SplitPrimary ? 1.0 : 0.0);
    }, true);
    const i64 X = 20000;
    const auto g = compress_mode(half, 0, X);
    double first = 1.5, second = 0.5;  // p = 2
    for (i64 p = 3; p <= X; p += 2)
        if (oracle::is_prime(p) && p % 4 == 3) {
            first *= 1.0 + 1.0 / p;
            second *= 1.0 - 1.0 / p;
        }
    CHECK(h_factor(g, X).first == doctest::Approx(first).epsilon(1e-12));
    CHECK(h_factor(g, X).second == doctest::Approx(second).epsilon(1e-12));

    const auto one = compress_mode(constant_one(), 0, X);
    const auto hf = h_factor(one, X);
    const auto direct = direct_products(one, X);
    CHECK(hf.first == doctest::Approx(direct.first).epsilon(1e-12));
    CHECK(hf.second == doctest::Approx(direct.second).epsilon(1e-12));
    const auto cal = frozen();
    for (const auto& rep : h_factor_reports(one, X, 0)) CHECK(rep.ratio <= *cal.constant(rep.tag));
    const auto reps = h_factor_reports(one, X, 0);
    REQUIRE(reps.size() == 2);
    CHECK(reps[0].bound == doctest::Approx(std::log(double(X))));
}

TEST_CASE("h1_check") {
    for (int m : {1, 2, 5}) {
        const auto plain = h1_check(constant_one(), m, 10, 20000);
        CHECK(plain.best_A > 0.0);
        CHECK(plain.slack == doctest::Approx(1.0 / std::log(10.0)));

        const auto aligned = h1_check(angular_character(-m), m, 10, 20000);
        CHECK(aligned.best_A == doctest::Approx(2.0).epsilon(1e-12));

        const auto lam = angular_character(-m);
        const auto cancel = MultFn("cancel", [lam](const PrimeIdeal& p, int k) {
            const cplx v = lam.at(p, k);
            return p.kind == PrimeKind::SplitConjugate && k % 2 ? -v : v;
        }, true);
        const auto bad = h1_check(cancel, m, 10, 20000);
        CHECK(bad.lhs < 1e-12);
        CHECK(bad.best_A < 1e-12);
        CHECK(bad.rhs_sum == doctest::Approx(aligned.rhs_sum));
    }
    const auto empty = h1_check(constant_one(), 1, 6, 8);
    CHECK(empty.best_A == 0.0);
    CHECK_THROWS_AS(h1_check(constant_one(), 1, 100, 10), PreconditionError);
}

TEST_CASE("twisted long sums") {
    IdealTable table(100000);
    const auto f = random_multiplicative(12, RandomValues::UnitCircle, false);
    const auto vals = table.evaluate(f);
    CHECK(std::abs(twisted_long_sum(table, vals, 0, 0.0, 5e4) - partial_sum(table, vals, 5e4)) < 1e-9);

    const double t0 = 1.3;
    const auto aligned = pointwise_product(angular_character(-2), norm_twist(t0));
    CHECK(std::abs(twisted_long_sum(aligned, 2, t0, 1e4) - double(oracle::lattice_count(10000))) < 1e-8);

    for (int m : {-1, 3})
        for (double t : {0.0, 2.0}) {
            const auto g = compress_mode(f, m, 100000);
            const cplx a = twisted_long_sum(table, vals, m, t, 1e5);
            CHECK(std::abs(a - twisted_long_sum(g, t, 1e5)) < 1e-8);
            CHECK(std::abs(a - twisted_long_sum(f, m, t, 1e5)) < 1e-8);
        }

    const double s = std::abs(twisted_long_sum(table, table.evaluate(mobius()), 1, 2.0, 1e5)) / 1e5;
    CHECK(s <= 0.05);
    CHECK(s <= *frozen().constant("twisted_long_sum"));
}

TEST_CASE("sliding window equals fresh interval sums") {
    const i64 X = 200000;
    const auto f = random_multiplicative(77, RandomValues::UnitCircle, false);
    IdealTable table(X + 50000);
    const auto vals = table.evaluate(f);
    const auto g = norm_compress(table, vals, X + 50000);
    SplitMix64 rng(3);
    for (int probe = 0; probe < 100; ++probe) {
        const i64 h = 1 + static_cast<i64>(rng.next() % 50000);
        const auto W = window_sums(g.values, X, h);
        REQUIRE(W.size() == static_cast<std::size_t>(X / 2));
        const i64 n = X / 2 + static_cast<i64>(rng.next() % (X / 2));
        const cplx fresh = interval_sum(table, vals, double(n), double(h));
        CHECK(std::abs(W[n - X / 2] - fresh) <= 1e-9 * (1.0 + std::abs(fresh)));
    }
}

TEST_CASE("l2 statistic") {
    const auto J = Sector::from_pi_fractions(0, 0.25);
    SUBCASE("trivial cases") {
        CHECK(l2_statistic(config(10000, 200, Sector::full(), constant_one())).value == 0.0);
        const double u = l2_unrestricted(config(100000, 2000, Sector::full(), constant_one())).value;
        CHECK(std::abs(u - std::pow(std::acos(-1.0) / 4, 2)) <= 1e-2);
    }
    SUBCASE("agrees with a direct integral from partial sums") {
        const i64 X = 4000, h = 150;
        IdealTable table(X + h);
        const auto f = random_multiplicative(9, RandomValues::Sign, true);
        const auto vals = table.evaluate(f);
        double want = 0.0, want_u = 0.0;
        for (i64 n = X / 2; n < X; ++n) {
            const cplx d = sector_interval_sum(table, vals, J, double(n), double(h)) -
                           J.density() * interval_sum(table, vals, double(n), double(h));
            want += std::norm(d / double(h));
            want_u += std::norm(interval_sum(table, vals, double(n), double(h)) / double(h));
        }
        want *= 2.0 / X;
        want_u *= 2.0 / X;
        CHECK(l2_statistic(config(X, h, J, f)).value == doctest::Approx(want).epsilon(1e-10));
        CHECK(l2_unrestricted(config(X, h, J, f)).value == doctest::Approx(want_u).epsilon(1e-10));
    }
    SUBCASE("degenerate window h = X/2") {
        const i64 X = 2000, h = 1000;
        const auto f = random_multiplicative(4, RandomValues::UnitCircle, true);
        IdealTable table(X + h);
        const auto vals = table.evaluate(f);
        double want = 0.0;
        for (i64 n = X / 2; n < X; ++n)
            want += std::norm((partial_sum(table, vals, double(n + h)) - partial_sum(table, vals, double(n))) / double(h));
        want *= 2.0 / X;
        CHECK(l2_unrestricted(config(X, h, Sector::full(), f)).value == doctest::Approx(want).epsilon(1e-10));
    }
    SUBCASE("modes") {
        auto cfg = config(20000, 500, J, mobius());
        cfg.T = 4;
        cfg.m_list = {-4, -1, 1, 3};
        const auto rep = l2_statistic(cfg);
        REQUIRE(rep.decomposition.size() == 4);
        for (const auto& mode : rep.decomposition) {
            CHECK(mode.weight == fourier_coeff(J, mode.m));
            CHECK(mode.value >= 0.0);
            // |b_m|^2 times the unrestricted statistic of mu lambda_m
            auto c = config(20000, 500, Sector::full(), pointwise_product(mobius(), angular_character(mode.m)));
            CHECK(mode.value == doctest::Approx(std::norm(mode.weight) * l2_unrestricted(c).value).epsilon(1e-10));
        }
        cfg.m_list = {5};
        CHECK_THROWS_AS(l2_statistic(cfg), PreconditionError);
        cfg.m_list = {0};
        CHECK_THROWS_AS(l2_statistic(cfg), PreconditionError);
    }
    SUBCASE("validation") {
        CHECK_THROWS_AS(l2_statistic(config(10001, 10, J, mobius())), PreconditionError);
        CHECK_THROWS_AS(l2_statistic(config(10000, 10000, J, mobius())), PreconditionError);
        CHECK_THROWS_AS(l2_statistic(config(10000, 0, J, mobius())), PreconditionError);
        const auto budget = memory_budget();
        set_memory_budget(1 << 20);
        CHECK_THROWS_AS(l2_statistic(config(1000000, 10000, J, mobius())), ResourceError);
        set_memory_budget(budget);
    }
    SUBCASE("desk-scale values at X = 10^6, h = 10^4") {
        const auto cal = frozen();
        const double one = l2_statistic(config(1000000, 10000, J, constant_one())).value;
        CHECK(one <= 1e-2);
        const double rnd = l2_statistic(config(1000000, 10000, J, random_multiplicative(42))).value;
        CHECK(rnd <= 0.2);
        const double mu_u = l2_unrestricted(config(1000000, 10000, J, mobius())).value;
        CHECK(mu_u <= 0.05);
        CHECK(mu_u <= *cal.constant("l2_unrestricted"));
        const double mu = l2_statistic(config(1000000, 10000, J, mobius())).value;
        CHECK(mu <= *cal.constant("l2_sectorial"));
        // h = X^0.6
        const double small = l2_statistic(config(10000, 251, J, mobius())).value;
        const double large = l2_statistic(config(1000000, 3981, J, mobius())).value;
        CHECK(large <= small);
    }
}
