#pragma once

// Test-only reference implementations, independent of the library's
// evaluation strategy: long-double power series for I_n and the standard
// log series for K_n (integer order, small argument), plus finite-difference
// helpers. Good to ~1e-16 relative for x <= 2, n <= 8.

#include <cmath>
#include <functional>

namespace testref {

inline long double series_i(int n, long double x) {
    const long double half_x = x / 2.0L;
    long double term = 1.0L;
    for (int j = 1; j <= n; ++j) term *= half_x / j;  // (x/2)^n / n!
    long double sum = term;
    const long double q = half_x * half_x;
    for (int k = 1; k < 400; ++k) {
        term *= q / (static_cast<long double>(k) * (n + k));
        sum += term;
        if (term < 1e-25L * sum) break;
    }
    return sum;
}

inline long double digamma_int(int m) {
    // psi(m) = -gamma + sum_{j=1}^{m-1} 1/j
    const long double gamma = 0.57721566490153286060651209008240243L;
    long double s = -gamma;
    for (int j = 1; j < m; ++j) s += 1.0L / j;
    return s;
}

inline long double series_k(int n, long double x) {
    const long double half_x = x / 2.0L;
    const long double q = half_x * half_x;

    // finite sum: (1/2)(x/2)^{-n} sum_{k=0}^{n-1} ((n-k-1)!/k!) (-q)^k
    long double finite = 0.0L;
    if (n > 0) {
        long double fact_nm1 = 1.0L;  // (n-1)!
        for (int j = 2; j <= n - 1; ++j) fact_nm1 *= j;
        long double coeff = fact_nm1;  // ((n-k-1)!/k!) at k = 0
        long double pw = 1.0L;
        long double xn = 1.0L;
        for (int j = 0; j < n; ++j) xn *= half_x;
        for (int k = 0; k <= n - 1; ++k) {
            finite += coeff * pw;
            pw *= -q;
            if (k + 1 <= n - 1)
                coeff = coeff / (k + 1) / (n - k - 1 < 1 ? 1 : (n - k - 1));
        }
        finite *= 0.5L / xn;
    }

    // log term and the psi series
    const long double logt =
        (n % 2 == 0 ? -1.0L : 1.0L) * std::log(half_x) * series_i(n, x);

    long double xn = 1.0L;
    for (int j = 0; j < n; ++j) xn *= half_x;
    long double fact_k = 1.0L, fact_nk = 1.0L;  // k!, (n+k)!
    for (int j = 2; j <= n; ++j) fact_nk *= j;
    long double psi_sum = 0.0L;
    long double pw = 1.0L;
    for (int k = 0; k < 400; ++k) {
        if (k > 0) {
            fact_k *= k;
            fact_nk *= (n + k);
            pw *= q;
        }
        const long double term =
            (digamma_int(k + 1) + digamma_int(n + k + 1)) / (fact_k * fact_nk) * pw;
        psi_sum += term;
        if (k > 4 && std::abs(term) < 1e-28L * std::abs(psi_sum)) break;
    }
    const long double psi_t = (n % 2 == 0 ? 1.0L : -1.0L) * 0.5L * xn * psi_sum;

    return finite + logt + psi_t;
}

// centered second-order mixed finite difference d^2 f / (dx dy)
inline double fd_mixed(const std::function<double(double, double)>& f, double x,
                       double y, double h) {
    return (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) /
           (4.0 * h * h);
}

// centered first derivative
inline double fd_first(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace testref
