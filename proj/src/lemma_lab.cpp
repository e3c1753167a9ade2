#include "zi/lemma_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "zi/errors.hpp"
#include "zi/kernels.hpp"
#include "zi/pretentious.hpp"

namespace zi {

namespace {

i64 floor_i64(double x) { return static_cast<i64>(std::floor(x)); }

// Lambda summed over ideals with lo <= N a <= hi (both inclusive, integers).
double lambda_window(i64 lo, i64 hi) {
    CompensatedSum sum;
    for (i64 p : rational_primes_up_to(hi)) {
        const double lp = std::log(static_cast<double>(p));
        if (p == 2) {
            for (i64 q = 2; q <= hi; q *= 2)
                if (q >= lo) sum.add(lp);
        } else if (p % 4 == 1) {
            for (i64 q = p; q <= hi; q *= p) {
                if (q >= lo) sum.add(2.0 * lp);
                if (q > hi / p) break;
            }
        } else {
            if (p > hi / p) continue;
            for (i64 q = p * p; q <= hi; q *= p * p) {
                if (q >= lo) sum.add(2.0 * lp);
                if (q > hi / (p * p)) break;
            }
        }
    }
    return sum.value();
}

} // namespace

double psi_ideal(double x) {
    if (x < 2.0) throw PreconditionError("psi_ideal: need x >= 2");
    return lambda_window(1, floor_i64(x));
}

double mertens_sum(double x) {
    if (x < 2.0) return 0.0;
    CompensatedSum sum;
    for (const auto& p : prime_ideal_sieve(floor_i64(x))) sum.add(1.0 / static_cast<double>(p.norm));
    return sum.value();
}

double mertens_ideal(double x) {
    if (x < 3.0) throw PreconditionError("mertens_ideal: need x >= 3");
    return mertens_sum(x) - std::log(std::log(x));
}

i64 count_primes_1mod4(double U, double H) {
    const i64 lo = floor_i64(U) + 1;
    const i64 hi = floor_i64(U + H);
    if (hi < lo) return 0;
    std::vector<char> composite(static_cast<std::size_t>(hi - lo + 1), 0);
    for (i64 p : rational_primes_up_to(isqrt(hi))) {
        for (i64 q = std::max(p * p, (lo + p - 1) / p * p); q <= hi; q += p)
            composite[static_cast<std::size_t>(q - lo)] = 1;
    }
    i64 count = 0;
    for (i64 n = std::max<i64>(lo, 2); n <= hi; ++n)
        if (!composite[static_cast<std::size_t>(n - lo)] && n % 4 == 1) ++count;
    return count;
}

BoundReport brun_titchmarsh_mod4(double U, double H) {
    if (U < 3.0 || H < 2.0 || H > U) throw PreconditionError("brun_titchmarsh_mod4: need U >= 3 and 2 <= H <= U");
    const auto count = static_cast<double>(count_primes_1mod4(U, H));
    return make_report("brun_titchmarsh", {{"U", U}, {"H", H}}, count, H / (2.0 * std::log(2.0 * H)));
}

double short_interval_lambda(double M, double T) {
    const double lo = M * std::exp(-1.0 / T);
    const double hi = M * std::exp(1.0 / T);
    return lambda_window(static_cast<i64>(std::ceil(lo)), floor_i64(hi));
}

BoundReport short_interval_vm(double M, double T) {
    if (T < 1.0) throw PreconditionError("short_interval_vm: need T >= 1");
    if (M < T * T) throw PreconditionError("short_interval_vm: need M >= T^2");
    return make_report("short_interval_lambda", {{"M", M}, {"T", T}}, short_interval_lambda(M, T), M / T);
}

double ideal_lambda(const CanonicalGenerator& g) {
    const auto fac = factor_ideal(g);
    if (fac.factors.size() != 1) return 0.0;
    return std::log(static_cast<double>(fac.factors[0].prime.norm));
}

BoundReport mean_square_dirichlet(const std::vector<DirichletTerm>& terms, double T, double x) {
    if (T < 1.0 || x < T * T) throw PreconditionError("mean_square_dirichlet: need T >= 1 and x >= T^2");
    std::vector<cplx> a;
    std::vector<double> log_n;
    CompensatedSum rhs;
    for (const auto& term : terms) {
        const auto n = static_cast<double>(term.ideal.norm());
        if (n < T * T || n > x)
            throw PreconditionError("mean_square_dirichlet: ideal of norm " + std::to_string(term.ideal.norm()) +
                                    " outside [T^2, x]");
        const double lam = ideal_lambda(term.ideal);
        if (lam == 0.0 || term.c == cplx{0.0, 0.0}) continue;
        a.push_back(term.c * lam);
        log_n.push_back(std::log(n));
        rhs.add(n * std::norm(term.c) * lam);
    }
    double integral = 0.0;
    if (!a.empty()) {
        auto integrand = [&](double t) {
            CompensatedComplexSum s;
            for (std::size_t j = 0; j < a.size(); ++j) s.add(a[j] * std::polar(1.0, -t * log_n[j]));
            return std::norm(s.value());
        };
        double err = 0.0;
        integral = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, -T, T, 30, 1e-9, &err);
        if (!(err <= 1e-6 * std::abs(integral)))
            throw NumericError("mean_square_dirichlet: quadrature error estimate " + std::to_string(err) +
                               " for integral " + std::to_string(integral));
    }
    const double bound = rhs.value();
    if (bound == 0.0) return {"mean_square", {{"T", T}, {"x", x}, {"terms", 0.0}}, 0.0, 0.0, 0.0};
    return make_report("mean_square", {{"T", T}, {"x", x}, {"terms", static_cast<double>(a.size())}}, integral, bound);
}

PerronResult perron_truncated(const MultFn& f, double x, double T, double sigma, const PerronOptions& options) {
    if (!(x > 1.0) || T < 1.0) throw PreconditionError("perron_truncated: need x > 1 and T >= 1");
    if (!(sigma > 1.0)) throw PreconditionError("perron_truncated: need sigma > 1");
    const auto X = static_cast<i64>(std::ceil(x));
    for (const auto& p : prime_ideal_sieve(X))
        for (int k = 1; std::pow(static_cast<double>(p.norm), k) <= static_cast<double>(X); ++k)
            if (std::abs(f.at(p, k)) > 1.0 + 1e-12)
                throw PreconditionError("perron_truncated: f must be 1-bounded on prime powers");

    const EulerTerms terms = euler_terms(f, X, sigma);
    const double log_x = std::log(x);
    auto g = [&](double t) {
        const cplx s{sigma, t};
        const cplx F = serial::euler_grid(terms, sigma, t, 0.0, 1)[0];
        return F * std::exp(s * log_x) / s;
    };
    using GL = boost::math::quadrature::gauss<double, 16>;
    auto panel = [&](double a, double b) {
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        const auto& xs = GL::abscissa();
        const auto& ws = GL::weights();
        cplx acc = 0.0;
        for (std::size_t j = 0; j < xs.size(); ++j) acc += ws[j] * (g(mid + half * xs[j]) + g(mid - half * xs[j]));
        return acc * half;
    };
    const int n = std::max(1, static_cast<int>(std::ceil(2.0 * T / options.panel_height)));
    const double h = 2.0 * T / n;
    CompensatedComplexSum coarse, fine;
    double worst = 0.0;
    int worst_panel = 0;
    for (int j = 0; j < n; ++j) {
        const double a = -T + j * h, b = -T + (j + 1) * h;
        const cplx c = panel(a, b);
        const cplx d = panel(a, 0.5 * (a + b)) + panel(0.5 * (a + b), b);
        coarse.add(c);
        fine.add(d);
        if (std::abs(c - d) > worst) {
            worst = std::abs(c - d);
            worst_panel = j;
        }
    }
    const cplx integral = fine.value() / (2.0 * std::numbers::pi);
    const double diff = std::abs(coarse.value() - fine.value()) / (2.0 * std::numbers::pi);
    if (diff > 1e-8 * (1.0 + std::abs(integral)))
        throw NumericError("perron_truncated: panel refinement changed the integral by " + std::to_string(diff) +
                           "; worst panel " + std::to_string(worst_panel) + " of " + std::to_string(n) + " on [" +
                           std::to_string(-T + worst_panel * h) + ", " + std::to_string(-T + (worst_panel + 1) * h) +
                           "]");

    // Coefficients of the truncated Euler product: f on X-friable ideals.
    const double Z = options.majorant_span * x;
    const IdealTable table(static_cast<i64>(std::floor(Z)));
    const auto c = table.evaluate(smooth_rough_split(f, static_cast<double>(X)).smooth);
    const auto ideals = table.ideals();
    std::vector<cplx> w(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double n_a = static_cast<double>(ideals[i].norm);
        const double lr = std::log(x / n_a);
        const double cut = lr == 0.0 ? 1.0 : std::min(1.0, 1.0 / (T * std::abs(lr)));
        w[i] = std::abs(c[i]) * std::pow(x / n_a, sigma) * cut;
    }
    const double head = parallel::chunked_sum(w).real();
    // |c| <= 1, the weight is decreasing past Z, and #{N a <= u} <= (pi/4) u + 5 sqrt(u).
    const double tail_sum = sigma * (std::numbers::pi / 4.0) * std::pow(Z, 1.0 - sigma) / (sigma - 1.0) +
                            5.0 * sigma * std::pow(Z, 0.5 - sigma) / (sigma - 0.5);
    const double tail = std::pow(x, sigma) / (T * std::log(Z / x)) * tail_sum;
    const cplx direct = partial_sum(table, c, x);
    return {integral, head + tail, tail, direct, std::abs(integral - direct), 2 * n};
}

} // namespace zi
