#include "zi/sectorial.hpp"

#include <cmath>
#include <numbers>

#include "zi/errors.hpp"
#include "zi/kernels.hpp"

namespace zi {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

cplx e(double t) { return std::polar(1.0, kTwoPi * t); }

bool is_endpoint(const Sector& J, double theta) {
    if (J.is_full()) return false;
    return theta == J.theta1() || theta == std::fmod(J.theta2(), kHalfPi);
}

// Same as remainder() but without validation, for ideals known to be off the endpoints.
double remainder_unchecked(const FourierTruncation& trunc, double theta) {
    const Sector& J = trunc.sector;
    const cplx w = std::polar(1.0, 4.0 * theta);
    cplx wm = 1.0;
    CompensatedComplexSum sum;
    for (int m = 1; m <= trunc.T; ++m) {
        wm *= w;
        if (m % 32 == 0) wm = std::polar(1.0, 4.0 * m * theta);
        sum.add(trunc.b(m) * wm);
        sum.add(trunc.b(-m) * std::conj(wm));
    }
    const cplx s = sum.value();
    if (std::abs(s.imag()) > 1e-12)
        throw NumericError("remainder: imaginary residue " + std::to_string(s.imag()));
    const double ind = J.contains(theta) ? 1.0 : 0.0;
    return ind - J.density() - s.real();
}

} // namespace

cplx fourier_coeff(const Sector& J, int m) {
    if (m == 0) return 0.0;
    const double u1 = J.theta1() / kHalfPi;
    const double u2 = J.theta2() / kHalfPi;
    return (e(-m * u1) - e(-m * u2)) / cplx{0.0, kTwoPi * m};
}

FourierTruncation fourier_coeffs(const Sector& J, int T) {
    if (T < 1) throw PreconditionError("fourier_coeffs: need T >= 1");
    FourierTruncation out{J, T, std::vector<cplx>(2 * static_cast<std::size_t>(T) + 1)};
    if (J.is_full()) return out;
    for (int m = -T; m <= T; ++m) out.coeffs[static_cast<std::size_t>(m + T)] = fourier_coeff(J, m);
    return out;
}

double remainder(const FourierTruncation& trunc, double theta) {
    if (!(theta >= 0.0 && theta < kHalfPi)) throw PreconditionError("remainder: theta outside [0, pi/2)");
    if (is_endpoint(trunc.sector, theta)) throw ContractViolation("remainder: theta is an endpoint of the sector");
    return remainder_unchecked(trunc, theta);
}

double remainder_envelope(const FourierTruncation& trunc, double theta) {
    if (trunc.sector.is_full()) return 1.0;
    const double d1 = dist_quarter_turn(theta - trunc.sector.theta1());
    const double d2 = dist_quarter_turn(theta - trunc.sector.theta2());
    const double T = trunc.T;
    return std::min(1.0, 1.0 / (T * d1) + 1.0 / (T * d2));
}

BoundReport remainder_report(const FourierTruncation& trunc, double theta) {
    return make_report("fourier_remainder",
                       {{"theta1", trunc.sector.theta1()}, {"theta2", trunc.sector.theta2()}, {"T", trunc.T},
                        {"theta", theta}},
                       std::abs(remainder(trunc, theta)), remainder_envelope(trunc, theta));
}

BoundReport summed_remainder_report(const IdealTable& table, const FourierTruncation& trunc, double X, double Y) {
    if (!(0.0 <= X && X < Y)) throw PreconditionError("summed remainder: need 0 <= X < Y");
    const auto [a, b] = table.window(X, Y);
    const auto ideals = table.ideals();
    std::vector<cplx> r(b - a);
#pragma omp parallel for schedule(static)
    for (std::size_t i = a; i < b; ++i) {
        const double th = ideal_arg(ideals[i].generator());
        r[i - a] = is_endpoint(trunc.sector, th) ? 0.0 : std::abs(remainder_unchecked(trunc, th));
    }
    const double measured = parallel::chunked_sum(r).real();
    const double bound = (Y - X) * std::log(trunc.T + 1.0) / trunc.T + std::sqrt(Y);
    return make_report("summed_remainder",
                       {{"theta1", trunc.sector.theta1()}, {"theta2", trunc.sector.theta2()}, {"T", trunc.T}, {"X", X},
                        {"Y", Y}},
                       measured, bound);
}

SectorDecomposition sector_decomposition_residual(const IdealTable& table, std::span<const cplx> values, const Sector& J,
                                                  int T, double X, double Y) {
    if (!(0.0 <= X && X < Y)) throw PreconditionError("sector decomposition: need 0 <= X < Y");
    const auto [a, b] = table.window(X, Y);
    const auto v = values.subspan(a, b - a);
    const auto id = table.ideals().subspan(a, b - a);
    const FourierTruncation trunc = fourier_coeffs(J, T);

    const cplx all = parallel::chunked_sum(v);
    const cplx in_J = parallel::sector_sum(v, id, J.theta1(), J.theta2());
    const cplx left = in_J - J.density() * all;

    const auto twisted = parallel::twisted_sums(v, id, T);
    CompensatedComplexSum right;
    for (int m = -T; m <= T; ++m)
        if (m != 0) right.add(trunc.b(m) * twisted[static_cast<std::size_t>(m + T)]);

    const double bound = (Y - X) * std::log(T + 1.0) / T + std::sqrt(Y);
    auto report = make_report("sector_decomposition",
                              {{"theta1", J.theta1()}, {"theta2", J.theta2()}, {"T", T}, {"X", X}, {"Y", Y}},
                              std::abs(left - right.value()), bound);
    return {left, right.value(), std::move(report)};
}

CompressedFn compress_sector(const IdealTable& table, std::span<const cplx> values, const Sector& J, i64 X) {
    std::vector<cplx> masked(values.begin(), values.end());
    const auto ideals = table.ideals();
    for (std::size_t i = 0; i < masked.size(); ++i)
        if (!J.contains(ideal_arg(ideals[i].generator()))) masked[i] = 0.0;
    return norm_compress(table, masked, X, "sector");
}

cplx sector_left_compressed(const CompressedFn& fJ, const CompressedFn& f, double delta, double X, double Y) {
    const auto lo = static_cast<i64>(std::floor(X)) + 1;
    const auto hi = static_cast<i64>(std::floor(Y));
    if (hi > fJ.max_n() || hi > f.max_n()) throw PreconditionError("sector_left_compressed: Y beyond array");
    CompensatedComplexSum sJ, s;
    for (i64 n = lo; n <= hi; ++n) {
        sJ.add(fJ[n]);
        s.add(f[n]);
    }
    return sJ.value() - delta * s.value();
}

} // namespace zi
