#pragma once

// Direct numerical checks of the preliminary estimates: psi over ideals,
// Mertens over prime ideals, Brun-Titchmarsh mod 4, short-interval Lambda,
// the mean-square Dirichlet polynomial bound and truncated Perron.

#include <vector>

#include "zi/multfn.hpp"
#include "zi/report.hpp"

namespace zi {

/// sum_{N a <= x} Lambda(a): log N p over prime-power ideals p^k of norm <= x.
double psi_ideal(double x);

/// sum_{N p <= x} 1 / N p - log log x. Requires x >= 3.
double mertens_ideal(double x);
/// The raw prime-ideal sum without the log log x term.
double mertens_sum(double x);

/// Number of rational primes p = 1 (mod 4) with U < p <= U + H.
i64 count_primes_1mod4(double U, double H);

/// Count against H / (2 log 2H). Requires U >= 3 and 2 <= H <= U.
BoundReport brun_titchmarsh_mod4(double U, double H);

/// sum of Lambda(a) over M e^{-1/T} <= N a <= M e^{1/T}.
double short_interval_lambda(double M, double T);
/// short_interval_lambda against M / T. Requires T >= 1 and M >= T^2.
BoundReport short_interval_vm(double M, double T);

struct DirichletTerm {
    CanonicalGenerator ideal;
    cplx c;
};

/// Lambda of one ideal: log N p if the ideal is a power of p, else 0.
double ideal_lambda(const CanonicalGenerator& g);

/// int_{-T}^{T} |sum c(a) Lambda(a) N a^{-it}|^2 dt by adaptive Gauss-Kronrod
/// (relative tolerance 1e-6), against sum N a |c(a)|^2 Lambda(a). Every
/// supplied ideal must satisfy T^2 <= N a <= x.
BoundReport mean_square_dirichlet(const std::vector<DirichletTerm>& terms, double T, double x);

struct PerronOptions {
    double panel_height = 0.25;
    // The majorant is summed exactly over N a <= majorant_span * x and the
    // rest is bounded analytically.
    double majorant_span = 256.0;
};

struct PerronResult {
    cplx integral;     // (1/2 pi i) int_{sigma-iT}^{sigma+iT} F(s) x^s / s ds
    double majorant;   // sum |f(a)| (x/N a)^sigma min(1, 1/(T |log(x/N a)|)) plus tail
    double tail;       // analytic bound used for N a > majorant_span * x
    cplx direct;       // sum_{N a <= x} f(a)
    double defect;     // |integral - direct|
    int panels;
};

/// Truncated Perron integral with F from the Euler product over N p <= ceil(x)
/// (whose coefficients agree with f on every ideal of norm <= x). Requires
/// x > 1, sigma > 1, T >= 1, and |f(p^k)| <= 1. Throws NumericError if
/// halving the panels changes the integral by more than 1e-8 (1 + |integral|).
PerronResult perron_truncated(const MultFn& f, double x, double T, double sigma, const PerronOptions& options = {});

} // namespace zi
