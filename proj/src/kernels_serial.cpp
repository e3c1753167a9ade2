#include <cmath>

#include "zi/kernels.hpp"

namespace zi::serial {

namespace {

double arg_of(const IdealRecord& r) { return std::atan2(static_cast<double>(r.im), static_cast<double>(r.re)); }

} // namespace

i64 wedge_count(double theta, double delta, i64 lo, i64 hi) {
    i64 count = 0;
    for (i64 re = 1; re * re <= hi; ++re) {
        for (i64 im = 0; re * re + im * im <= hi; ++im) {
            if (re * re + im * im <= lo) continue;
            const double a = std::atan2(static_cast<double>(im), static_cast<double>(re));
            if (dist_quarter_turn(a - theta) <= delta) ++count;
        }
    }
    return count;
}

std::vector<cplx> evaluate_products(const CsrFactors& factors, const PrimePowerValues& pp) {
    const std::size_t n = factors.offsets.size() - 1;
    std::vector<cplx> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        cplx v{1.0, 0.0};
        for (auto j = factors.offsets[i]; j < factors.offsets[i + 1]; ++j)
            v *= pp.values[pp.offsets[factors.prime_index[j]] + static_cast<std::uint32_t>(factors.exponent[j]) - 1];
        out[i] = v;
    }
    return out;
}

cplx chunked_sum(std::span<const cplx> values) {
    CompensatedComplexSum s;
    for (cplx v : values) s.add(v);
    return s.value();
}

double abs_over_norm_sum(std::span<const cplx> values, std::span<const IdealRecord> ideals) {
    CompensatedSum s;
    for (std::size_t i = 0; i < values.size(); ++i) s.add(std::abs(values[i]) / static_cast<double>(ideals[i].norm));
    return s.value();
}

cplx sector_sum(std::span<const cplx> values, std::span<const IdealRecord> ideals, double theta1, double theta2) {
    CompensatedComplexSum s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double a = arg_of(ideals[i]);
        if (a >= theta1 && a < theta2) s.add(values[i]);
    }
    return s.value();
}

cplx twisted_sum(std::span<const cplx> values, std::span<const IdealRecord> ideals, int m, double t) {
    CompensatedComplexSum s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double phase = 4.0 * m * arg_of(ideals[i]) - t * std::log(static_cast<double>(ideals[i].norm));
        s.add(values[i] * std::polar(1.0, phase));
    }
    return s.value();
}

std::vector<cplx> twisted_sums(std::span<const cplx> values, std::span<const IdealRecord> ideals, int max_m) {
    std::vector<cplx> out(static_cast<std::size_t>(2 * max_m + 1));
    for (int m = -max_m; m <= max_m; ++m) out[static_cast<std::size_t>(m + max_m)] = twisted_sum(values, ideals, m, 0.0);
    return out;
}

std::vector<double> distance_grid(const PrimeTerms& terms, double kappa, double t0, double dt, std::size_t count) {
    std::vector<double> out(count);
    for (std::size_t j = 0; j < count; ++j) {
        const double t = t0 + static_cast<double>(j) * dt;
        CompensatedSum s;
        for (std::size_t p = 0; p < terms.size(); ++p)
            s.add((kappa - (terms.coeff[p] * std::polar(1.0, -t * terms.log_norm[p])).real()) * terms.inv_norm[p]);
        out[j] = s.value();
    }
    return out;
}

std::vector<cplx> euler_grid(const EulerTerms& terms, double sigma, double t0, double dt, std::size_t count) {
    std::vector<cplx> out(count);
    for (std::size_t j = 0; j < count; ++j) {
        const double t = t0 + static_cast<double>(j) * dt;
        cplx prod{1.0, 0.0};
        for (std::size_t p = 0; p < terms.size(); ++p) {
            const cplx z = std::exp(-sigma * terms.log_norm[p]) * std::polar(1.0, -t * terms.log_norm[p]);
            const auto b = terms.offset[p];
            const auto e = terms.offset[p + 1];
            if (terms.geometric[p]) {
                prod /= (1.0 - terms.coeff[b] * z);
            } else {
                cplx acc{0.0, 0.0};
                for (auto k = e; k > b; --k) acc = (acc + terms.coeff[k - 1]) * z;
                prod *= 1.0 + acc;
            }
        }
        out[j] = prod;
    }
    return out;
}

} // namespace zi::serial
