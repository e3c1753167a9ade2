#pragma once

// Fourier analysis of sector indicators on [0, pi/2) and the decomposition
// of sector sums into twisted sums over angular characters.

#include <span>
#include <vector>

#include "zi/ideal_table.hpp"
#include "zi/multfn.hpp"
#include "zi/report.hpp"
#include "zi/sector.hpp"

namespace zi {

// 1_J(theta) = delta_J + sum_{0 < |m| <= T} b_m(J) e^{4 i m theta} + R_T(theta).
struct FourierTruncation {
    Sector sector;
    int T = 1;
    std::vector<cplx> coeffs;  // b_m at index m + T; the m = 0 slot is zero

    cplx b(int m) const { return coeffs[static_cast<std::size_t>(m + T)]; }
};

/// b_m(J) = (e(-m u1) - e(-m u2)) / (2 pi i m), u_j = theta_j / (pi/2).
cplx fourier_coeff(const Sector& J, int m);
FourierTruncation fourier_coeffs(const Sector& J, int T);

/// R_T(theta). theta must lie in [0, pi/2) and, unless J is the full
/// quadrant, away from the endpoints of J modulo pi/2 (else ContractViolation).
double remainder(const FourierTruncation& trunc, double theta);

// min(1, 1/(T ||theta - theta1||) + 1/(T ||theta - theta2||)), distances taken modulo pi/2.
double remainder_envelope(const FourierTruncation& trunc, double theta);

/// Pointwise check of |R_T(theta)| against remainder_envelope.
BoundReport remainder_report(const FourierTruncation& trunc, double theta);

/// sum_{X < N a <= Y} |R_T(arg a)| against (Y - X) log(T + 1) / T + sqrt(Y).
/// Ideals whose argument is an endpoint of J are skipped.
BoundReport summed_remainder_report(const IdealTable& table, const FourierTruncation& trunc, double X, double Y);

struct SectorDecomposition {
    cplx left;   // S_{f,J} - delta_J S_f over X < N a <= Y
    cplx right;  // sum_m b_m sum_{X < N a <= Y} f(a) lambda_m(a)
    BoundReport report;
};

/// Both sides of the sector decomposition in the window X < N a <= Y, with
/// |left - right| measured against (Y - X) log(T + 1) / T + sqrt(Y).
/// `values` holds f over the table (IdealTable::evaluate).
SectorDecomposition sector_decomposition_residual(const IdealTable& table, std::span<const cplx> values, const Sector& J,
                                                  int T, double X, double Y);

// Norm-compression of f restricted to the sector: values[n] = sum_{N a = n, arg a in J} f(a).
CompressedFn compress_sector(const IdealTable& table, std::span<const cplx> values, const Sector& J, i64 X);

/// Left side of the decomposition from norm-compressed arrays.
cplx sector_left_compressed(const CompressedFn& fJ, const CompressedFn& f, double delta, double X, double Y);

} // namespace zi
