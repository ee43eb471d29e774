#pragma once

// Adaptive integration over the semi-infinite spectral variable rho for
// exponentially decaying integrands, primed mode-sum truncation, and
// Richardson extrapolation of point-splitting limits.

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "wedgecas/errors.hpp"

namespace wedgecas {

struct QuadratureSpec {
    double rel_tol = 1e-9;
    double abs_tol = 1e-14;
    // integrate until rho * decay_length >= tail_cutoff_scale
    double tail_cutoff_scale = 60.0;
    int max_subdivisions = 4000;
};

struct IntegralResult {
    double value = 0.0;
    double error = 0.0;
};

namespace detail {

// 15-point Kronrod / 7-point Gauss pair (QUADPACK dqk15 abscissae/weights).
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
IntegralResult gk15(const F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double res_g = fc * kWg[3];
    double res_k = fc * kWgk[7];
    double fv[7][2];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        fv[j][0] = f(center - dx);
        fv[j][1] = f(center + dx);
        const double s = fv[j][0] + fv[j][1];
        res_k += kWgk[j] * s;
        if (j % 2 == 1) res_g += kWg[j / 2] * s;
    }
    const double mean = 0.5 * res_k;
    double res_asc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j)
        res_asc += kWgk[j] * (std::abs(fv[j][0] - mean) + std::abs(fv[j][1] - mean));
    res_asc *= std::abs(half);

    IntegralResult out;
    out.value = res_k * half;
    double err = std::abs((res_k - res_g) * half);
    if (res_asc != 0.0 && err != 0.0)
        err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
    out.error = err;
    return out;
}

// Adaptive bisection on [a, b]; subdivision budget shared via `budget`.
template <class F>
IntegralResult adapt_finite(const F& f, double a, double b, double rel_tol,
                            double abs_tol, int& budget) {
    struct Seg {
        double a, b, value, error;
    };
    std::vector<Seg> segs;
    auto first = gk15(f, a, b);
    segs.push_back({a, b, first.value, first.error});

    auto total = [&segs]() {
        double v = 0.0, e = 0.0;
        for (const auto& s : segs) {
            v += s.value;
            e += s.error;
        }
        return IntegralResult{v, e};
    };

    for (;;) {
        auto t = total();
        const double tol = std::max(abs_tol, rel_tol * std::abs(t.value));
        if (t.error <= tol) break;
        if (budget <= 0) {
            throw QuadratureError("adaptive quadrature: subdivision budget exhausted",
                                  t.value, t.error);
        }
        // split the worst segment
        size_t worst = 0;
        for (size_t i = 1; i < segs.size(); ++i)
            if (segs[i].error > segs[worst].error) worst = i;
        const Seg s = segs[worst];
        const double mid = 0.5 * (s.a + s.b);
        if (mid <= s.a || mid >= s.b) {
            throw QuadratureError("adaptive quadrature: interval too small to split",
                                  t.value, t.error);
        }
        auto left = gk15(f, s.a, mid);
        auto right = gk15(f, mid, s.b);
        segs[worst] = {s.a, mid, left.value, left.error};
        segs.push_back({mid, s.b, right.value, right.error});
        --budget;
    }
    // fixed summation order for reproducibility
    std::sort(segs.begin(), segs.end(),
              [](const Seg& l, const Seg& r) { return l.a < r.a; });
    IntegralResult out;
    for (const auto& s : segs) {
        out.value += s.value;
        out.error += s.error;
    }
    return out;
}

}  // namespace detail

// Integral of f over [0, infinity) for integrands with an exponential tail
// ~ e^{-rho * decay_length}. Panels [0,L], [L,2L], [2L,4L], ... with
// L = 1/decay_length; panel endpoints keep the rho = 0 endpoint open
// (Gauss-Kronrod nodes are interior), which tolerates the integrable
// log singularity of K_0 there. The tail beyond the last panel is bounded
// by the observed geometric panel decay and folded into the error estimate.
template <class F>
IntegralResult integrate_semi_infinite(const F& f, double decay_length,
                                       const QuadratureSpec& spec = {}) {
    if (!(decay_length > 0.0))
        throw DomainError("integrate_semi_infinite: decay_length must be positive");
    const double unit = 1.0 / decay_length;
    const double rho_cut = spec.tail_cutoff_scale / decay_length;

    int budget = spec.max_subdivisions;
    IntegralResult acc;
    double prev_panel = 0.0;
    double lo = 0.0, hi = unit;
    double tail_bound = 0.0;
    for (;;) {
        // running absolute floor: tail panels of difference integrands sit on
        // the cancellation noise of the integrand and cannot meet a relative
        // target of their own
        const double abs_floor =
            std::max(spec.abs_tol, 0.03 * spec.rel_tol * std::abs(acc.value));
        auto panel =
            detail::adapt_finite(f, lo, hi, 0.25 * spec.rel_tol, abs_floor, budget);
        acc.value += panel.value;
        acc.error += panel.error;

        const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(acc.value));
        const double pa = std::abs(panel.value);
        if (lo > 0.0) {
            // geometric tail certificate from consecutive panel magnitudes
            const double ratio = (prev_panel > 0.0) ? pa / prev_panel : 0.0;
            if (ratio < 0.9) {
                tail_bound = pa * ratio / (1.0 - ratio);
                if (hi >= rho_cut && pa <= tol && tail_bound <= tol) break;
            }
            // difference integrands bottom out on cancellation noise before
            // the decay certificate can fire; two consecutive sub-floor
            // panels close the tail at the floor
            if (lo >= 8.0 * unit && pa <= abs_floor && prev_panel <= abs_floor) {
                tail_bound = std::max(tail_bound, 4.0 * abs_floor);
                break;
            }
        }
        prev_panel = pa;
        lo = hi;
        hi = 2.0 * hi;
        if (lo > 64.0 * rho_cut) {
            // decay never certified; integrand inconsistent with decay_length
            throw QuadratureError(
                "integrate_semi_infinite: tail failed to decay by rho = " +
                    std::to_string(lo),
                acc.value, acc.error + tail_bound);
        }
    }
    acc.error += tail_bound;
    return acc;
}

struct SumSpec {
    double rel_tol = 1e-15;  // vs the running sum of |terms|
    double abs_tol = 0.0;
    int max_terms = 200000;
    int min_terms = 4;
    int consecutive = 3;  // stop only after this many quiet terms in a row
};

// Primed mode sum: (1/2) t_0 + t_1 + t_2 + ...  Truncates when the
// geometric tail bound drops below tolerance. Envelopes may rise before
// they fall (large-argument products peak near nu ~ sqrt(2 rho r^2/dr)),
// so non-decay is only diagnosed by explosive growth or budget exhaustion.
template <class TermFn>
double sum_primed(const TermFn& term, const SumSpec& spec = {}) {
    double sum = 0.5 * term(0);
    double abs_sum = std::abs(sum);
    double prev_mag = std::abs(sum);
    int quiet = 0;
    double ratio_max = 0.0;
    for (int m = 1; m <= spec.max_terms; ++m) {
        const double t = term(m);
        sum += t;
        const double mag = std::abs(t);
        abs_sum += mag;
        if (m >= spec.min_terms) {
            const double ratio = (prev_mag > 0.0) ? mag / prev_mag : 0.0;
            ratio_max = std::max(ratio_max * 0.5, ratio);  // fading memory of spikes
            const double tol = std::max(spec.abs_tol, spec.rel_tol * abs_sum);
            if (mag <= tol && ratio_max < 0.999) {
                const double tail = mag * ratio_max / (1.0 - ratio_max);
                if (tail <= tol && ++quiet >= spec.consecutive) return sum;
            } else {
                quiet = 0;
            }
            if (!std::isfinite(sum)) {
                throw SummationError("sum_primed: diverging term sequence", sum, m);
            }
        }
        if (mag > 0.0) prev_mag = mag;
    }
    throw SummationError("sum_primed: non-decaying term sequence (budget exhausted)",
                         sum, spec.max_terms);
}

struct ExtrapolationSpec {
    int levels = 4;            // number of splitting levels (>= 3)
    double base_delta = 0.12;  // largest splitting parameter
    double ratio = 2.0;        // delta_{j+1} = delta_j / ratio
    double power = 1.0;        // error series runs in delta^power
    double tol = 0.0;          // 0: accept the final estimate unconditionally
};

struct ExtrapolationResult {
    double value = 0.0;
    double error = 0.0;
};

// Neville polynomial extrapolation of samples (delta_j, v_j) to delta -> 0,
// in the variable x = delta^power. Exact for polynomials in x of degree
// < #samples; error estimated from the last two diagonal entries.
inline ExtrapolationResult extrapolate_coincidence(
    const std::vector<std::pair<double, double>>& samples,
    const ExtrapolationSpec& spec = {}) {
    const int n = static_cast<int>(samples.size());
    if (n < 3)
        throw DomainError("extrapolate_coincidence: need at least 3 samples");
    std::vector<double> x(n), t(n);
    for (int j = 0; j < n; ++j) {
        if (!(samples[j].first > 0.0))
            throw DomainError("extrapolate_coincidence: splitting must be positive");
        if (j > 0 && samples[j].first >= samples[j - 1].first)
            throw DomainError("extrapolate_coincidence: splittings must decrease");
        x[j] = std::pow(samples[j].first, spec.power);
    }
    double prev_diag = samples[0].second;
    double diag = prev_diag;
    for (int j = 0; j < n; ++j) {
        t[j] = samples[j].second;
        for (int k = j - 1; k >= 0; --k) {
            const double denom = x[k] - x[j];
            t[k] = t[k + 1] + (t[k + 1] - t[k]) * x[j] / denom;
        }
        prev_diag = diag;
        diag = t[0];
        if (!std::isfinite(diag))
            throw ExtrapolationError("extrapolate_coincidence: non-finite table entry",
                                     prev_diag, std::abs(diag - prev_diag));
    }
    ExtrapolationResult out;
    out.value = diag;
    out.error = std::abs(diag - prev_diag);
    if (spec.tol > 0.0 &&
        out.error > std::max(spec.tol * std::abs(out.value), 1e-300)) {
        throw ExtrapolationError("extrapolate_coincidence: not converged", out.value,
                                 out.error);
    }
    return out;
}

}  // namespace wedgecas
