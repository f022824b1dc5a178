#include "famalab/specfun.hpp"

#include "famalab/errors.hpp"
#include "famalab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace famalab::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kGammaMaxIter = 100000;

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

// P(a, x) by its power series; valid (and fast) for x < a + 1.
double lower_gamma_series(double a, double x) {
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    for (int n = 0; n < kGammaMaxIter; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * kEps) {
            return sum * std::exp(-x + a * std::log(x) - log_gamma(a));
        }
    }
    throw NumericalError("incomplete gamma series did not converge (a=" + std::to_string(a) +
                         ", x=" + std::to_string(x) + ")");
}

// Q(a, x) by modified Lentz continued fraction; valid for x >= a + 1.
double upper_gamma_fraction(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kGammaMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) {
            return std::exp(-x + a * std::log(x) - log_gamma(a)) * h;
        }
    }
    throw NumericalError("incomplete gamma continued fraction did not converge (a=" +
                         std::to_string(a) + ", x=" + std::to_string(x) + ")");
}

void check_gamma_args(double a, double x) {
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("incomplete gamma requires a > 0");
    if (!(x >= 0.0)) throw DomainError("incomplete gamma requires x >= 0");
}

// e^{-x} I_n(x) by the ascending series, rescaled to survive large x.
double scaled_i_series(int n, double x) {
    const double q = 0.25 * x * x;
    double log_scale = n * std::log(0.5 * x) - log_gamma(n + 1.0) - x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 10'000'000; ++k) {
        term *= q / (static_cast<double>(k) * (k + n));
        sum += term;
        if (sum > 1e250) {
            sum *= 1e-250;
            term *= 1e-250;
            log_scale += 250.0 * std::numbers::ln10;
        }
        if (term < kEps * 0.1 * sum) break;
    }
    return std::exp(log_scale + std::log(sum));
}

// Hankel expansion of e^{-x} I_nu(x) for large x.
double scaled_i_asymptotic(int nu, double x) {
    const double mu = 4.0 * nu * nu;
    double term = 1.0;
    double sum = 1.0;
    double prev = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= -(mu - odd * odd) / (k * 8.0 * x);
        if (std::abs(term) > std::abs(prev)) break;  // series started to diverge
        sum += term;
        if (std::abs(term) < kEps * 0.1 * std::abs(sum)) break;
        prev = term;
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

struct MarcumPair {
    double q;
    double p;
};

// Q_nu(a, b) and 1 - Q_nu(a, b) for nu > 0 via the Poisson mixture of
// regularized gamma functions, summed outward from the Poisson mode.
MarcumPair marcum_pair(double nu, double a, double b) {
    if (!(nu > 0.0) || !std::isfinite(nu)) throw DomainError("marcum_q requires nu > 0 on this branch");
    if (!(a >= 0.0) || !(b >= 0.0)) throw DomainError("marcum_q requires a, b >= 0");
    require_finite(a, "marcum_q argument a");
    if (std::isinf(b)) return {0.0, 1.0};
    if (b == 0.0) return {1.0, 0.0};
    const double lambda = 0.5 * a * a;
    const double x = 0.5 * b * b;
    if (lambda == 0.0) return {reg_upper_gamma(nu, x), reg_lower_gamma(nu, x)};

    constexpr double kCutoff = 1e-15;
    constexpr long kMaxTerms = 100000;
    const double log_lambda = std::log(lambda);
    const double log_x = std::log(x);
    const long mode = static_cast<long>(std::floor(lambda));
    const double log_w_mode = -lambda + mode * log_lambda - log_gamma(mode + 1.0);

    const double q_mode = reg_upper_gamma(nu + mode, x);
    const double p_mode = reg_lower_gamma(nu + mode, x);
    double sum_q = std::exp(log_w_mode) * q_mode;
    double sum_p = std::exp(log_w_mode) * p_mode;
    long terms = 1;

    // log of x^s e^{-x} / Gamma(s+1), the step between consecutive orders:
    // Q(s+1, x) = Q(s, x) + d_s and P(s, x) = P(s+1, x) + d_s.
    auto log_step = [&](double s) { return s * log_x - x - log_gamma(s + 1.0); };

    // Upward: k = mode+1, mode+2, ...
    {
        double log_w = log_w_mode;
        double qk = q_mode;
        double pk = p_mode;
        double log_d = log_step(nu + mode);
        for (long k = mode + 1;; ++k) {
            if (++terms > kMaxTerms) throw NumericalError("marcum_q: term cap exceeded");
            log_w += log_lambda - std::log(static_cast<double>(k));
            const double d = std::exp(log_d);
            qk = std::min(1.0, qk + d);
            pk = std::max(0.0, pk - d);
            log_d += log_x - std::log(nu + k);
            const double w = std::exp(log_w);
            sum_q += w * qk;
            sum_p += w * pk;
            const double ratio = lambda / (k + 1.0);
            const double tail = ratio < 1.0 ? w * ratio / (1.0 - ratio) : w * 1e300;
            if (tail <= kCutoff * std::min(sum_q, sum_p) || tail < kTiny) break;
        }
    }
    // Downward: k = mode-1, ..., 0
    {
        double log_w = log_w_mode;
        double qk = q_mode;
        double pk = p_mode;
        for (long k = mode - 1; k >= 0; --k) {
            if (++terms > kMaxTerms) throw NumericalError("marcum_q: term cap exceeded");
            log_w -= log_lambda - std::log(static_cast<double>(k + 1));
            const double d = std::exp(log_step(nu + k));
            pk = std::min(1.0, pk + d);
            qk = std::max(0.0, qk - d);
            const double w = std::exp(log_w);
            sum_q += w * qk;
            sum_p += w * pk;
            const double ratio = k / lambda;
            const double tail = w * ratio / (1.0 - ratio);
            if (tail <= kCutoff * std::min(sum_q, sum_p) || tail < kTiny) break;
        }
    }
    return {std::clamp(sum_q, 0.0, 1.0), std::clamp(sum_p, 0.0, 1.0)};
}

int complement_order(double nu) {
    const double m = 1.0 - nu;
    const double r = std::round(m);
    if (std::abs(m - r) > 1e-12 || r < 1.0) {
        throw DomainError("marcum_q: non-positive order must be an integer, got " + std::to_string(nu));
    }
    return static_cast<int>(r);
}

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("log_gamma requires x > 0");
#if defined(__GLIBC__)
    int sign = 0;
    return ::lgamma_r(x, &sign);
#else
    return std::lgamma(x);
#endif
}

double gamma_fn(double x) {
    if (!(x > 0.0) || std::isnan(x)) throw DomainError("gamma_fn requires x > 0");
    if (x > 171.6243769563027) throw OverflowError("gamma_fn overflows for x > 171.62");
    return std::tgamma(x);
}

double pochhammer(double a, int p) {
    if (p < 0) throw DomainError("pochhammer requires p >= 0");
    double out = 1.0;
    for (int i = 0; i < p; ++i) out *= a + i;
    return out;
}

double reg_lower_gamma(double a, double x) {
    check_gamma_args(a, x);
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < a + 1.0) return std::min(1.0, lower_gamma_series(a, x));
    return std::max(0.0, 1.0 - upper_gamma_fraction(a, x));
}

double reg_upper_gamma(double a, double x) {
    check_gamma_args(a, x);
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < a + 1.0) return std::max(0.0, 1.0 - lower_gamma_series(a, x));
    return std::min(1.0, upper_gamma_fraction(a, x));
}

double bessel_j0(double x) {
    require_finite(x, "bessel_j0 argument");
    return std::cyl_bessel_j(0.0, std::abs(x));
}

double bessel_i_scaled(int order, double x) {
    if (!(x >= 0.0)) throw DomainError("bessel_i_scaled requires x >= 0");
    const int n = std::abs(order);
    if (x == 0.0) return n == 0 ? 1.0 : 0.0;
    if (std::isinf(x)) return 0.0;
    if (x <= 30.0) return scaled_i_series(n, x);
    if (n <= 1) return scaled_i_asymptotic(n, x);
    if (static_cast<double>(n) * n <= 4.0 * x) {
        // Forward recurrence I_{k+1} = I_{k-1} - (2k/x) I_k; error growth is
        // bounded by e^{n^2/x} <= e^4 in this regime.
        double prev = scaled_i_asymptotic(0, x);
        double cur = scaled_i_asymptotic(1, x);
        for (int k = 1; k < n; ++k) {
            const double next = prev - (2.0 * k / x) * cur;
            prev = cur;
            cur = next;
        }
        return cur;
    }
    return scaled_i_series(n, x);
}

double bessel_i(int order, double x) {
    const double scaled = bessel_i_scaled(order, x);
    if (x > 709.0) {
        const double out = scaled * std::exp(x);
        if (std::isinf(out)) throw OverflowError("bessel_i overflows; use bessel_i_scaled");
        return out;
    }
    return scaled * std::exp(x);
}

double marcum_q(double nu, double a, double b) {
    if (nu > 0.0) return marcum_pair(nu, a, b).q;
    const int m = complement_order(nu);
    return marcum_pair(m, b, a).p;
}

double marcum_q_complement(double nu, double a, double b) {
    if (nu > 0.0) return marcum_pair(nu, a, b).p;
    const int m = complement_order(nu);
    return marcum_pair(m, b, a).q;
}

void angular_bessel_products(int first_order, double coupling, std::span<double> out) {
    if (!(coupling >= 0.0) || std::isinf(coupling)) {
        throw DomainError("angular_bessel_product requires a finite coupling >= 0");
    }
    if (out.empty()) return;
    const int count = static_cast<int>(out.size());
    int max_abs = 0;
    for (int j = 0; j < count; ++j) max_abs = std::max(max_abs, std::abs(first_order + j));

    thread_local std::vector<double> previous;
    thread_local std::vector<double> cosines;
    previous.assign(out.size(), 0.0);
    cosines.resize(static_cast<std::size_t>(max_abs) + 1);

    constexpr std::size_t kFirstNodes = 64;
    constexpr std::size_t kMaxNodes = 8192;
    bool have_previous = false;
    for (std::size_t nodes = kFirstNodes; nodes <= kMaxNodes; nodes *= 2) {
        const auto& rule = quad::gauss_legendre(nodes);
        std::fill(out.begin(), out.end(), 0.0);
        for (std::size_t i = 0; i < nodes; ++i) {
            const double theta = 0.5 * std::numbers::pi * (rule.nodes[i] + 1.0);
            const double s = std::sin(0.5 * theta);
            const double weight = 0.5 * rule.weights[i] * std::exp(-2.0 * coupling * s * s);
            const double c1 = std::cos(theta);
            cosines[0] = 1.0;
            if (max_abs >= 1) cosines[1] = c1;
            for (int n = 2; n <= max_abs; ++n) cosines[n] = 2.0 * c1 * cosines[n - 1] - cosines[n - 2];
            for (int j = 0; j < count; ++j) out[j] += weight * cosines[std::abs(first_order + j)];
        }
        if (have_previous) {
            bool converged = true;
            for (int j = 0; j < count; ++j) {
                if (std::abs(out[j] - previous[j]) > 1e-10 * std::abs(out[j]) + 1e-15) {
                    converged = false;
                    break;
                }
            }
            if (converged) return;
        }
        std::copy(out.begin(), out.end(), previous.begin());
        have_previous = true;
    }
    // Extremely peaked integrand; the scaled series/asymptotic form is exact here.
    for (int j = 0; j < count; ++j) out[j] = bessel_i_scaled(first_order + j, coupling);
}

double angular_bessel_product(const AngularIntegralSpec& spec) {
    double out = 0.0;
    angular_bessel_products(spec.order, spec.coupling, std::span<double>(&out, 1));
    return out;
}

double damped_angular_bessel_product(const AngularIntegralSpec& spec) {
    if (!std::isfinite(spec.damping)) throw DomainError("damping must be finite");
    return std::exp(-spec.damping) * angular_bessel_product(spec);
}

}  // namespace famalab::specfun
