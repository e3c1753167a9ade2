#pragma once

// Pretentious distances over prime ideals, their minimization over the
// archimedean twist t, the Euler product F(s), the Halasz parameter M(x),
// and the mean-value bounds as evaluable functionals.

#include <optional>
#include <variant>
#include <vector>

#include "zi/kernels.hpp"
#include "zi/multfn.hpp"
#include "zi/report.hpp"

namespace zi {

struct DistanceQuery {
    MultFn f;
    int twist_m = 0;
    double kappa = 1.0;
    double x = 3.0;
    double t_lo = 0.0;
    double t_hi = 0.0;
    // g in D_kappa(f, g; x); defaults to the constant 1. Must satisfy |g(p)| <= 1.
    std::optional<MultFn> comparator;
};

// Symmetric t-range |t| <= log x, as used by M_m(x).
DistanceQuery log_range_query(MultFn f, int m, double x, double kappa = 1.0);
// |t| <= 2x, as used by the long-range parameter of the short-interval theorem.
DistanceQuery wide_range_query(MultFn f, int m, double x);

// Per-prime coefficients f(p) conj(g(p)) lambda_m(p) for N p <= x.
// Throws ContractViolation naming the prime if |f(p)| > kappa.
PrimeTerms distance_terms(const DistanceQuery& q);

/// sum_{N p <= x} (kappa - Re(f(p) conj(g(p)) lambda_m(p) N p^{-it})) / N p.
double distance_sq(const DistanceQuery& q, double t);
double distance_sq(const PrimeTerms& terms, double kappa, double t);

struct MinimizerResult {
    double t_star = 0.0;
    double value = 0.0;
    bool certified = false;
    double grid_spacing = 0.0;
};

struct MinimizePolicy {
    // Full-grid scans are used while (grid points) * (prime ideals) stays
    // below this; beyond it a multi-start search runs and the result is
    // labeled uncertified.
    double max_grid_work = 2.0e10;
    double spacing_factor = 0.05;  // grid spacing = spacing_factor / log x
    double refine_width = 1e-6;
};

/// Grid scan at spacing 0.05 / log x over [t_lo, t_hi], then golden-section
/// refinement around the best grid point. Ties prefer the smaller |t|.
MinimizerResult minimize_over_t(const DistanceQuery& q, const MinimizePolicy& policy = {});

struct EulerValue {
    cplx value;
    // Estimate of |log F - log F_X| from kappa * sum_{N p > X} N p^{-sigma}.
    double log_tail_bound = 0.0;
};

// Local Euler factors of f for primes of norm <= X, with power series
// truncated once N p^{-k sigma_min} < 1e-14.
EulerTerms euler_terms(const MultFn& f, i64 X, double sigma_min);

/// Truncated Euler product over prime ideals of norm <= X. Requires
/// Re s >= 1 + 1 / log X; otherwise throws NumericError.
EulerValue euler_F(const MultFn& f, cplx s, i64 X, double kappa = 1.0);

struct HalaszParams {
    double x = 0.0;
    double kappa = 1.0;
    double c0 = 0.0;
    double t_cap = 0.0;
    double t_center = 0.0;
    double t_argmax = 0.0;
    double max_value = 0.0;  // max |F(c0 + it) / (c0 + it)|
    double M = 0.0;
    double M_plus = 0.0;
};

/// M(x) from max_{|t - center| <= (log x)^kappa} |F(c0 + it) / (c0 + it)| = e^{-M} (log x)^kappa,
/// c0 = 1 + 1 / log x, F truncated at N p <= x. Throws ContractViolation if
/// |Lambda_f| <= kappa Lambda fails below x.
HalaszParams halasz_M(const MultFn& f, double kappa, double x, double t_center = 0.0);

struct Thm12Inputs {
    double x;
    double M_pret;
};
struct Thm14Inputs {
    double x;
    double kappa;
    double M_plus;
};
struct Cor42Inputs {
    double x;
    double kappa;
    double M_pret;
};
struct Thm55Inputs {
    double x;
    int T;
    std::vector<double> M_m;  // M_m(x) for 1 <= |m| <= T, any order
};
using RhsInputs = std::variant<Thm12Inputs, Thm14Inputs, Cor42Inputs, Thm55Inputs>;

/// Right-hand sides of the mean-value bounds with implied constant 1:
///   Thm12: (1 + M) e^{-M} x + (x / log x) log log x
///   Thm14: (1 + M+) e^{-M+} x (log x)^{kappa-1} + (x / log x)(log log x)^kappa
///   Cor42: as Thm14 with M_pret in place of M+
///   Thm55: x log(T+1) max_m (1 + M_m) e^{-M_m} + (x / log x) log log x log(T+1)
///          + x log(T+1) / T + sqrt x
double halasz_rhs(const RhsInputs& inputs);

/// For each sample t: |F(c0 + it)| / ((log x)^kappa exp(-D_kappa(f, N^{it}; x)^2)).
std::vector<BoundReport> check_euler_pretentious_bound(const MultFn& f, double kappa, double x,
                                                       const std::vector<double>& t_samples);

} // namespace zi
