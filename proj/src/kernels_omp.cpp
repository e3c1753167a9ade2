#include <algorithm>
#include <cmath>

#include "zi/kernels.hpp"

namespace zi::parallel {

namespace {

constexpr std::size_t kGridBlock = 64;

double arg_of(const IdealRecord& r) { return std::atan2(static_cast<double>(r.im), static_cast<double>(r.re)); }

std::size_t chunk_count(std::size_t n) { return (n + kReductionChunk - 1) / kReductionChunk; }

// Evaluates body(i) -> cplx over [0, n) in fixed chunks and combines the
// chunk partials in order.
template <class Body>
cplx chunked_complex(std::size_t n, Body body) {
    const std::size_t chunks = chunk_count(n);
    std::vector<CompensatedComplexSum> partial(chunks);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t end = std::min(n, (c + 1) * kReductionChunk);
        for (std::size_t i = c * kReductionChunk; i < end; ++i) partial[c].add(body(i));
    }
    CompensatedComplexSum total;
    for (const auto& p : partial) total.add(p);
    return total.value();
}

} // namespace

i64 wedge_count(double theta, double delta, i64 lo, i64 hi) {
    const i64 rows = isqrt(hi);
    i64 count = 0;
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : count)
    for (i64 re = 1; re <= rows; ++re) {
        const i64 r2 = re * re;
        const i64 im_hi = isqrt(hi - r2);
        i64 im = lo - r2 < 0 ? 0 : isqrt(lo - r2);
        for (; im <= im_hi; ++im) {
            if (r2 + im * im <= lo) continue;
            const double a = std::atan2(static_cast<double>(im), static_cast<double>(re));
            if (dist_quarter_turn(a - theta) <= delta) ++count;
        }
    }
    return count;
}

std::vector<cplx> evaluate_products(const CsrFactors& factors, const PrimePowerValues& pp) {
    const auto n = static_cast<std::ptrdiff_t>(factors.offsets.size() - 1);
    std::vector<cplx> out(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        cplx v{1.0, 0.0};
        const auto ui = static_cast<std::size_t>(i);
        for (auto j = factors.offsets[ui]; j < factors.offsets[ui + 1]; ++j)
            v *= pp.values[pp.offsets[factors.prime_index[j]] + static_cast<std::uint32_t>(factors.exponent[j]) - 1];
        out[ui] = v;
    }
    return out;
}

cplx chunked_sum(std::span<const cplx> values) {
    return chunked_complex(values.size(), [&](std::size_t i) { return values[i]; });
}

double abs_over_norm_sum(std::span<const cplx> values, std::span<const IdealRecord> ideals) {
    return chunked_complex(values.size(), [&](std::size_t i) {
               return cplx{std::abs(values[i]) / static_cast<double>(ideals[i].norm), 0.0};
           }).real();
}

cplx sector_sum(std::span<const cplx> values, std::span<const IdealRecord> ideals, double theta1, double theta2) {
    return chunked_complex(values.size(), [&](std::size_t i) {
        const double a = arg_of(ideals[i]);
        return (a >= theta1 && a < theta2) ? values[i] : cplx{0.0, 0.0};
    });
}

cplx twisted_sum(std::span<const cplx> values, std::span<const IdealRecord> ideals, int m, double t) {
    return chunked_complex(values.size(), [&](std::size_t i) {
        const double phase = 4.0 * m * arg_of(ideals[i]) - t * std::log(static_cast<double>(ideals[i].norm));
        return values[i] * std::polar(1.0, phase);
    });
}

std::vector<cplx> twisted_sums(std::span<const cplx> values, std::span<const IdealRecord> ideals, int max_m) {
    const std::size_t n = values.size();
    const std::size_t chunks = chunk_count(n);
    const auto width = static_cast<std::size_t>(2 * max_m + 1);
    std::vector<CompensatedComplexSum> partial(chunks * width);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t c = 0; c < chunks; ++c) {
        CompensatedComplexSum* row = &partial[c * width];
        const std::size_t end = std::min(n, (c + 1) * kReductionChunk);
        for (std::size_t i = c * kReductionChunk; i < end; ++i) {
            const cplx w = std::polar(1.0, 4.0 * arg_of(ideals[i]));
            const cplx v = values[i];
            row[static_cast<std::size_t>(max_m)].add(v);
            cplx up = v;
            cplx down = v;
            for (int m = 1; m <= max_m; ++m) {
                up *= w;
                down *= std::conj(w);
                row[static_cast<std::size_t>(max_m + m)].add(up);
                row[static_cast<std::size_t>(max_m - m)].add(down);
            }
        }
    }
    std::vector<cplx> out(width);
    for (std::size_t k = 0; k < width; ++k) {
        CompensatedComplexSum total;
        for (std::size_t c = 0; c < chunks; ++c) total.add(partial[c * width + k]);
        out[k] = total.value();
    }
    return out;
}

std::vector<double> distance_grid(const PrimeTerms& terms, double kappa, double t0, double dt, std::size_t count) {
    CompensatedSum base;
    for (double inv : terms.inv_norm) base.add(kappa * inv);
    const double base_value = base.value();
    std::vector<double> out(count);
    const std::size_t blocks = (count + kGridBlock - 1) / kGridBlock;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t b = 0; b < blocks; ++b) {
        const std::size_t j0 = b * kGridBlock;
        const std::size_t len = std::min(kGridBlock, count - j0);
        CompensatedSum acc[kGridBlock];
        const double t_start = t0 + static_cast<double>(j0) * dt;
        for (std::size_t p = 0; p < terms.size(); ++p) {
            const double L = terms.log_norm[p];
            cplx ph = terms.coeff[p] * std::polar(1.0, -t_start * L);
            const cplx step = std::polar(1.0, -dt * L);
            const double inv = terms.inv_norm[p];
            for (std::size_t j = 0; j < len; ++j) {
                acc[j].add(-ph.real() * inv);
                ph *= step;
            }
        }
        for (std::size_t j = 0; j < len; ++j) out[j0 + j] = base_value + acc[j].value();
    }
    return out;
}

std::vector<cplx> euler_grid(const EulerTerms& terms, double sigma, double t0, double dt, std::size_t count) {
    std::vector<cplx> out(count);
    const std::size_t blocks = (count + kGridBlock - 1) / kGridBlock;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t b = 0; b < blocks; ++b) {
        const std::size_t j0 = b * kGridBlock;
        const std::size_t len = std::min(kGridBlock, count - j0);
        cplx prod[kGridBlock];
        std::fill(prod, prod + len, cplx{1.0, 0.0});
        const double t_start = t0 + static_cast<double>(j0) * dt;
        for (std::size_t p = 0; p < terms.size(); ++p) {
            const double L = terms.log_norm[p];
            cplx z = std::exp(-sigma * L) * std::polar(1.0, -t_start * L);
            const cplx step = std::polar(1.0, -dt * L);
            const auto lo = terms.offset[p];
            const auto hi = terms.offset[p + 1];
            for (std::size_t j = 0; j < len; ++j) {
                if (terms.geometric[p]) {
                    prod[j] /= (1.0 - terms.coeff[lo] * z);
                } else {
                    cplx acc{0.0, 0.0};
                    for (auto k = hi; k > lo; --k) acc = (acc + terms.coeff[k - 1]) * z;
                    prod[j] *= 1.0 + acc;
                }
                z *= step;
            }
        }
        std::copy(prod, prod + len, out.begin() + static_cast<std::ptrdiff_t>(j0));
    }
    return out;
}

} // namespace zi::parallel
