// Independent reference implementations used only by the tests. They are
// deliberately naive (plain series, composite Simpson) and run in long
// double so they share no code path with the library.
#pragma once

#include <cmath>
#include <functional>

namespace oracle {

inline long double simpson(const std::function<long double(long double)>& f, long double a,
                           long double b, int n) {
    if (n % 2) ++n;
    const long double h = (b - a) / n;
    long double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0L : 2.0L);
    return s * h / 3.0L;
}

// J0 by its power series (fine for |x| <= ~12 in long double).
inline long double j0_series(long double x) {
    long double term = 1.0L;
    long double sum = 1.0L;
    const long double q = -(x * x) / 4.0L;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<long double>(k) * k);
        sum += term;
        if (std::fabs(term) < 1e-22L * std::fabs(sum) && k > 10) break;
    }
    return sum;
}

// I_n(x) by its power series, n >= 0.
inline long double besseli_series(int n, long double x) {
    long double term = 1.0L;
    for (int i = 1; i <= n; ++i) term *= x / (2.0L * i);
    long double sum = term;
    const long double q = x * x / 4.0L;
    for (int k = 1; k < 2000; ++k) {
        term *= q / (static_cast<long double>(k) * (k + n));
        sum += term;
        if (term < 1e-22L * sum) break;
    }
    return sum;
}

// P(a, x) = (1/Gamma(a)) int_0^x t^{a-1} e^{-t} dt for integer a >= 1.
inline long double lower_gamma_integral(int a, long double x) {
    long double g = 1.0L;
    for (int i = 2; i < a; ++i) g *= i;
    auto f = [a](long double t) { return std::pow(t, static_cast<long double>(a - 1)) * std::exp(-t); };
    return simpson(f, 0.0L, x, 20000) / g;
}

// Marcum Q from its defining integral, integer order nu >= 1.
inline long double marcum_integral(int nu, long double a, long double b) {
    auto f = [&](long double x) -> long double {
        if (a == 0.0L) {
            long double g = 1.0L;
            for (int i = 2; i < nu; ++i) g *= i;
            return std::pow(x, 2.0L * nu - 1.0L) * std::exp(-x * x / 2.0L) /
                   (std::pow(2.0L, nu - 1.0L) * g);
        }
        return std::pow(x / a, static_cast<long double>(nu - 1)) * x *
               std::exp(-(x * x + a * a) / 2.0L) * besseli_series(nu - 1, a * x);
    };
    return simpson(f, b, b + a + 40.0L, 40000);
}

// P(n, x) for integer n >= 1: the series e^{-x} x^n / n! sum_j x^j / ((n+1)...(n+j))
// below x = n + 1, the finite upper-tail sum above.
inline long double lower_gamma_series(int n, long double x) {
    if (x <= 0.0L) return 0.0L;
    if (x > n + 1.0L) {
        // finite upper-tail sum e^{-x} sum_{j<n} x^j / j!
        long double term = std::exp(-x);
        long double q = term;
        for (int j = 1; j < n; ++j) {
            term *= x / j;
            q += term;
        }
        return 1.0L - q;
    }
    long double lead = -x + n * std::log(x) - std::lgamma(static_cast<long double>(n) + 1.0L);
    long double term = 1.0L;
    long double sum = 1.0L;
    for (int j = 1; j < 100000; ++j) {
        term *= x / (n + j);
        sum += term;
        if (term < 1e-22L * sum) break;
    }
    return std::exp(lead) * sum;
}

// 1 - Q_nu(a, b): noncentral chi-square CDF as a Poisson mixture of P(nu + k, b^2/2),
// summed from k = 0 with no mode tricks.
inline long double marcum_complement_mixture(int nu, long double a, long double b) {
    const long double lam = a * a / 2.0L;
    const long double x = b * b / 2.0L;
    long double total = 0.0L;
    for (int k = 0; k < 20000; ++k) {
        const long double w =
            std::exp(-lam + (k ? k * std::log(lam) : 0.0L) - std::lgamma(k + 1.0L));
        total += w * lower_gamma_series(nu + k, x);
        if (k > lam && w < 1e-24L) break;
    }
    return total;
}

// Regularized incomplete beta I_p(a, b) for positive integers via the binomial tail.
inline long double incomplete_beta_int(int a, int b, long double p) {
    const int n = a + b - 1;
    long double s = 0.0L;
    for (int j = a; j <= n; ++j) {
        const long double lc = std::lgamma(n + 1.0L) - std::lgamma(j + 1.0L) - std::lgamma(n - j + 1.0L);
        s += std::exp(lc + j * std::log(p) + (n - j) * std::log1p(-p));
    }
    return s;
}

}  // namespace oracle
