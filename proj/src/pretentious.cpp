#include "zi/pretentious.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/tools/minima.hpp>

#include "zi/errors.hpp"

namespace zi {

namespace {

// Brent's method to an absolute width of about `width` around the minimum
// of fn on [lo, hi].
template <class Fn>
std::pair<double, double> refine_min(Fn fn, double lo, double hi, double width) {
    const int bits = std::clamp(static_cast<int>(std::ceil(-std::log2(width / std::max(hi - lo, width)))) + 2, 8, 50);
    std::uintmax_t iters = 200;
    return boost::math::tools::brent_find_minima(fn, lo, hi, bits, iters);
}

// Ties within this relative margin go to the smaller |t|.
bool better(double value, double t, double best_value, double best_t) {
    const double tol = 1e-12 * std::max(1.0, std::abs(best_value));
    if (value < best_value - tol) return true;
    if (value > best_value + tol) return false;
    return std::abs(t) < std::abs(best_t);
}

// Grid anchor + j h covering [lo, hi], plus lo and hi themselves when they
// fall between grid points. Anchoring keeps the anchor (t = 0, or the
// centre) an exact grid point.
struct Grid {
    double t0 = 0.0;
    std::size_t count = 0;
    bool add_lo = false;
    bool add_hi = false;

    std::size_t size() const { return count + add_lo + add_hi; }
    double at(std::size_t j, double lo, double hi, double h) const {
        if (add_lo && j == 0) return lo;
        if (add_lo) --j;
        return j < count ? t0 + static_cast<double>(j) * h : hi;
    }
};

Grid anchored_grid(double lo, double hi, double anchor, double h) {
    Grid g;
    const double j_lo = std::ceil((lo - anchor) / h);
    const double j_hi = std::floor((hi - anchor) / h);
    if (j_hi >= j_lo) {
        g.t0 = anchor + j_lo * h;
        g.count = static_cast<std::size_t>(j_hi - j_lo) + 1;
        g.add_lo = g.t0 > lo;
        g.add_hi = anchor + j_hi * h < hi;
    } else {
        g.add_lo = true;
        g.add_hi = hi > lo;
    }
    return g;
}

// Values on the grid: the kernel for the regular part, fn for the extras.
template <class Kernel, class Fn>
auto grid_values(const Grid& g, double lo, double hi, Kernel kernel, Fn fn) {
    auto regular = kernel(g.t0, g.count);
    decltype(regular) out;
    out.reserve(g.size());
    if (g.add_lo) out.push_back(fn(lo));
    out.insert(out.end(), regular.begin(), regular.end());
    if (g.add_hi) out.push_back(fn(hi));
    return out;
}

} // namespace

DistanceQuery log_range_query(MultFn f, int m, double x, double kappa) {
    const double L = std::log(x);
    return {std::move(f), m, kappa, x, -L, L, std::nullopt};
}

DistanceQuery wide_range_query(MultFn f, int m, double x) {
    return {std::move(f), m, 1.0, x, -2.0 * x, 2.0 * x, std::nullopt};
}

PrimeTerms distance_terms(const DistanceQuery& q) {
    if (q.x < 2.0) throw PreconditionError("distance_sq: need x >= 2");
    if (q.kappa < 1.0) throw PreconditionError("distance_sq: need kappa >= 1");
    PrimeTerms terms;
    const auto X = static_cast<i64>(std::floor(q.x));
    const MultFn twist = angular_character(q.twist_m);
    for (const auto& p : prime_ideal_sieve(X)) {
        const cplx fp = q.f.at(p, 1);
        if (std::abs(fp) > q.kappa * (1.0 + 1e-12))
            throw ContractViolation("distance_sq: |" + q.f.label() + "(p)| = " + std::to_string(std::abs(fp)) +
                                    " exceeds kappa at prime (" + std::to_string(p.generator.re()) + "," +
                                    std::to_string(p.generator.im()) + ")");
        cplx a = fp * twist.at(p, 1);
        if (q.comparator) a *= std::conj(q.comparator->at(p, 1));
        terms.coeff.push_back(a);
        terms.log_norm.push_back(std::log(static_cast<double>(p.norm)));
        terms.inv_norm.push_back(1.0 / static_cast<double>(p.norm));
    }
    return terms;
}

double distance_sq(const PrimeTerms& terms, double kappa, double t) {
    return serial::distance_grid(terms, kappa, t, 0.0, 1)[0];
}

double distance_sq(const DistanceQuery& q, double t) { return distance_sq(distance_terms(q), q.kappa, t); }

MinimizerResult minimize_over_t(const DistanceQuery& q, const MinimizePolicy& policy) {
    if (!(q.t_lo <= q.t_hi)) throw PreconditionError("minimize_over_t: empty t-range");
    const PrimeTerms terms = distance_terms(q);
    const double h = policy.spacing_factor / std::log(q.x);
    const Grid g = anchored_grid(q.t_lo, q.t_hi, 0.0, h);
    const double work = static_cast<double>(g.size()) * static_cast<double>(std::max<std::size_t>(terms.size(), 1));
    const auto objective = [&](double t) { return distance_sq(terms, q.kappa, t); };

    MinimizerResult result;
    if (work <= policy.max_grid_work) {
        const auto grid = grid_values(
            g, q.t_lo, q.t_hi,
            [&](double t0, std::size_t n) { return parallel::distance_grid(terms, q.kappa, t0, h, n); }, objective);
        std::size_t best = 0;
        auto t_at = [&](std::size_t j) { return g.at(j, q.t_lo, q.t_hi, h); };
        for (std::size_t j = 1; j < grid.size(); ++j)
            if (better(grid[j], t_at(j), grid[best], t_at(best))) best = j;
        result = {t_at(best), grid[best], true, h};
        const double lo = std::max(q.t_lo, result.t_star - h);
        const double hi = std::min(q.t_hi, result.t_star + h);
        if (hi > lo) {
            const auto [t, v] = refine_min(objective, lo, hi, policy.refine_width);
            if (better(v, t, result.value, result.t_star)) {
                result.t_star = t;
                result.value = v;
            }
        }
        return result;
    }

    // Multi-start: a coarse grid sized to the work budget, then local
    // refinement from the 16 best coarse points. May miss narrow minima.
    const auto coarse_n = static_cast<std::size_t>(
        std::max(2.0, policy.max_grid_work / static_cast<double>(std::max<std::size_t>(terms.size(), 1)) / 4.0));
    const double hc = (q.t_hi - q.t_lo) / static_cast<double>(coarse_n - 1);
    const auto grid = parallel::distance_grid(terms, q.kappa, q.t_lo, hc, coarse_n);
    std::vector<std::size_t> order(grid.size());
    for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
    const std::size_t starts = std::min<std::size_t>(16, order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(starts), order.end(),
                      [&](std::size_t a, std::size_t b) { return grid[a] < grid[b] || (grid[a] == grid[b] && a < b); });
    result = {q.t_lo + static_cast<double>(order[0]) * hc, grid[order[0]], false, hc};
    for (std::size_t s = 0; s < starts; ++s) {
        const double center = q.t_lo + static_cast<double>(order[s]) * hc;
        const double lo = std::max(q.t_lo, center - h);
        const double hi = std::min(q.t_hi, center + h);
        const auto [t, v] = refine_min(objective, lo, hi, policy.refine_width);
        if (better(v, t, result.value, result.t_star)) {
            result.t_star = t;
            result.value = v;
        }
    }
    return result;
}

EulerTerms euler_terms(const MultFn& f, i64 X, double sigma_min) {
    EulerTerms terms;
    terms.offset.push_back(0);
    for (const auto& p : prime_ideal_sieve(std::max<i64>(X, 2))) {
        if (p.norm > X) continue;
        const double L = std::log(static_cast<double>(p.norm));
        terms.log_norm.push_back(L);
        if (f.completely_multiplicative()) {
            terms.coeff.push_back(f.at(p, 1));
            terms.geometric.push_back(1);
        } else {
            const int k_max = std::clamp(static_cast<int>(std::ceil(14.0 * std::log(10.0) / (sigma_min * L))), 1, 64);
            std::vector<cplx> c;
            for (int k = 1; k <= k_max; ++k) c.push_back(f.at(p, k));
            while (!c.empty() && c.back() == cplx{0.0, 0.0}) c.pop_back();
            if (c.empty()) c.push_back(cplx{0.0, 0.0});
            terms.coeff.insert(terms.coeff.end(), c.begin(), c.end());
            terms.geometric.push_back(0);
        }
        terms.offset.push_back(static_cast<std::uint32_t>(terms.coeff.size()));
    }
    return terms;
}

EulerValue euler_F(const MultFn& f, cplx s, i64 X, double kappa) {
    if (X < 2) throw PreconditionError("euler_F: need X >= 2");
    const double sigma = s.real();
    const double log_x = std::log(static_cast<double>(X));
    if (sigma < 1.0 + 1.0 / log_x - 1e-12)
        throw NumericError("euler_F: Re(s) = " + std::to_string(sigma) + " is below 1 + 1/log X for X = " +
                           std::to_string(X));
    const EulerTerms terms = euler_terms(f, X, sigma);
    const cplx value = serial::euler_grid(terms, sigma, s.imag(), 0.0, 1)[0];
    const double tail = kappa * std::pow(static_cast<double>(X), 1.0 - sigma) / ((sigma - 1.0) * log_x);
    return {value, tail};
}

HalaszParams halasz_M(const MultFn& f, double kappa, double x, double t_center) {
    if (x < 3.0) throw PreconditionError("halasz_M: need x >= 3");
    const auto X = static_cast<i64>(std::floor(x));
    const auto check = check_lambda_bound(f, kappa, X);
    if (!check.ok) {
        const auto& v = *check.first_violation;
        throw ContractViolation("halasz_M: |Lambda_f| exceeds kappa Lambda at (" + std::to_string(v.prime.generator.re()) +
                                "," + std::to_string(v.prime.generator.im()) + ")^" + std::to_string(v.exponent));
    }
    HalaszParams out;
    out.x = x;
    out.kappa = kappa;
    const double L = std::log(x);
    out.c0 = 1.0 + 1.0 / L;
    out.t_cap = std::pow(L, kappa);
    out.t_center = t_center;
    const EulerTerms terms = euler_terms(f, X, out.c0);
    const double h = 0.05 / L;
    const double lo = t_center - out.t_cap;
    const double hi = t_center + out.t_cap;
    const Grid g = anchored_grid(lo, hi, t_center, h);
    const auto F_at = [&](double t) { return serial::euler_grid(terms, out.c0, t, 0.0, 1)[0]; };
    const auto values = grid_values(
        g, lo, hi, [&](double t0, std::size_t n) { return parallel::euler_grid(terms, out.c0, t0, h, n); }, F_at);
    auto ratio = [&](cplx F, double t) { return std::abs(F) / std::abs(cplx{out.c0, t}); };
    std::size_t best = 0;
    double best_value = -1.0;
    for (std::size_t j = 0; j < values.size(); ++j) {
        const double t = g.at(j, lo, hi, h);
        const double r = ratio(values[j], t);
        if (r > best_value * (1.0 + 1e-12) ||
            (r >= best_value * (1.0 - 1e-12) && std::abs(t - t_center) < std::abs(g.at(best, lo, hi, h) - t_center))) {
            best = j;
            best_value = r;
        }
    }
    out.t_argmax = g.at(best, lo, hi, h);
    out.max_value = best_value;
    const auto neg = [&](double t) { return -ratio(F_at(t), t); };
    const double a = std::max(lo, out.t_argmax - h);
    const double b = std::min(hi, out.t_argmax + h);
    if (b > a) {
        const auto [t, v] = refine_min(neg, a, b, 1e-6);
        if (-v > out.max_value) {
            out.max_value = -v;
            out.t_argmax = t;
        }
    }
    out.M = kappa * std::log(L) - std::log(out.max_value);
    out.M_plus = std::max(out.M, 0.0);
    return out;
}

double halasz_rhs(const RhsInputs& inputs) {
    auto shape = [](double M) { return (1.0 + M) * std::exp(-M); };
    return std::visit(
        [&](const auto& in) -> double {
            using T = std::decay_t<decltype(in)>;
            const double L = std::log(in.x);
            if constexpr (std::is_same_v<T, Thm12Inputs>) {
                return shape(in.M_pret) * in.x + in.x / L * std::log(L);
            } else if constexpr (std::is_same_v<T, Thm14Inputs>) {
                return shape(in.M_plus) * in.x * std::pow(L, in.kappa - 1.0) + in.x / L * std::pow(std::log(L), in.kappa);
            } else if constexpr (std::is_same_v<T, Cor42Inputs>) {
                return shape(in.M_pret) * in.x * std::pow(L, in.kappa - 1.0) + in.x / L * std::pow(std::log(L), in.kappa);
            } else {
                if (in.T < 1) throw PreconditionError("halasz_rhs: need T >= 1");
                double worst = 0.0;
                for (double M : in.M_m) worst = std::max(worst, shape(M));
                const double lt = std::log(in.T + 1.0);
                return in.x * lt * worst + in.x / L * std::log(L) * lt + in.x * lt / in.T + std::sqrt(in.x);
            }
        },
        inputs);
}

std::vector<BoundReport> check_euler_pretentious_bound(const MultFn& f, double kappa, double x,
                                                       const std::vector<double>& t_samples) {
    const auto X = static_cast<i64>(std::floor(x));
    const double L = std::log(x);
    const double c0 = 1.0 + 1.0 / L;
    const EulerTerms eterms = euler_terms(f, X, c0);
    DistanceQuery q{f, 0, kappa, x, 0.0, 0.0, std::nullopt};
    const PrimeTerms dterms = distance_terms(q);
    std::vector<BoundReport> out;
    for (double t : t_samples) {
        const double F = std::abs(serial::euler_grid(eterms, c0, t, 0.0, 1)[0]);
        const double D2 = distance_sq(dterms, kappa, t);
        out.push_back(make_report("euler_pretentious", {{"x", x}, {"t", t}, {"kappa", kappa}}, F,
                                  std::pow(L, kappa) * std::exp(-D2)));
    }
    return out;
}

} // namespace zi
