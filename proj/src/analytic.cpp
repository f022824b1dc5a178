#include "famalab/analytic.hpp"

#include "famalab/errors.hpp"
#include "famalab/parallel.hpp"
#include "famalab/quadrature.hpp"
#include "famalab/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

namespace famalab {

namespace {

constexpr double kLogUnderflow = -745.0;

double binomial(int n, int k) {
    double out = 1.0;
    for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
    return out;
}

// (B/A)^n e^{-(A^2+B^2)/2} I_n(AB) in log space from the scaled Bessel
// function; positive terms only, so the result keeps full relative accuracy.
double bessel_term_series(int n, double A, double B) {
    const int an = std::abs(n);
    if (A == 0.0 || B == 0.0) {
        // I_n(z) ~ (z/2)^|n| / |n|! as z -> 0
        const double s = n >= 0 ? B : A;
        const double e = -0.5 * (A * A + B * B);
        if (an == 0) return std::exp(e);
        if (s == 0.0) return 0.0;
        return std::exp(e + an * std::log(0.5 * s * s) - specfun::log_gamma(an + 1.0));
    }
    const double log_ratio = n * std::log(B / A);
    const double d = A - B;
    return std::exp(log_ratio - 0.5 * d * d + std::log(specfun::bessel_i_scaled(an, A * B)));
}

double log_weight(double v, double shape) {
    return std::log(2.0) + (2.0 * shape - 1.0) * std::log(v) - v * v - specfun::log_gamma(shape);
}

// Density of v when v^2 ~ Gamma(shape, 1): 2 v^{2 shape - 1} e^{-v^2} / Gamma(shape).
double weight(double v, double shape) {
    if (v <= 0.0) return 0.0;
    return std::exp(log_weight(v, shape));
}

double upper_limit(double shape, double cut) {
    const double mode = std::sqrt(std::max(0.5, (2.0 * shape - 1.0) / 2.0));
    return quad::tail_cutoff([shape](double v) { return log_weight(v, shape); }, mode, cut);
}

double kth_power(double v, int k) {
    if (v <= 1e-300) return 0.0;
    if (v >= 1.0) return 1.0;
    return std::exp(k * std::log(v));
}

struct BracketRange {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    long evaluations = 0;
    void add(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        ++evaluations;
    }
    void merge(const BracketRange& o) {
        lo = std::min(lo, o.lo);
        hi = std::max(hi, o.hi);
        evaluations += o.evaluations;
    }
};

quad::QuadResult integrate_checked(const std::function<double(double)>& f, double a, double b,
                                   double rel_tol, double abs_tol, int max_intervals,
                                   const char* what) {
    auto r = quad::gauss_kronrod(f, a, b, rel_tol, abs_tol, max_intervals);
    if (!r.converged) {
        throw NumericalError(std::string(what) + ": quadrature hit the subdivision cap (error " +
                             std::to_string(r.error) + ")");
    }
    return r;
}

// Outer integral over [0, hi] split into fixed panels; panels may run on
// several threads but are always summed in order.
AnalyticResult integrate_outer(const std::function<double(double, BracketRange&)>& f, double hi,
                               const QuadratureSettings& q, const char* what,
                               bool probability = true) {
    if (q.panels < 1) throw ConfigError("panels must be >= 1");
    const auto n = static_cast<std::size_t>(q.panels);
    std::vector<quad::QuadResult> parts(n);
    std::vector<BracketRange> ranges(n);
    parallel_for(n, q.jobs, [&](std::size_t i) {
        const double a = hi * static_cast<double>(i) / q.panels;
        const double b = hi * static_cast<double>(i + 1) / q.panels;
        BracketRange& range = ranges[i];
        parts[i] = integrate_checked([&](double v) { return f(v, range); }, a, b, q.rel_tol,
                                     q.abs_tol / q.panels, q.max_subdivisions, what);
    });
    AnalyticResult out;
    BracketRange total;
    for (std::size_t i = 0; i < n; ++i) {
        out.probability += parts[i].value;
        out.error += parts[i].error;
        total.merge(ranges[i]);
    }
    if (probability) out.probability = std::clamp(out.probability, 0.0, 1.0);
    out.bracket_min = total.lo;
    out.bracket_max = total.hi;
    out.evaluations = total.evaluations;
    return out;
}

void check_settings(const QuadratureSettings& q) {
    if (!(q.rel_tol > 0.0) || !(q.abs_tol > 0.0) || !(q.envelope_cut > 0.0) ||
        q.envelope_cut >= 1.0 || q.max_subdivisions < 1) {
        throw ConfigError("quadrature settings must be positive (envelope_cut < 1)");
    }
}

void require_correlated(const DerivedParams& p, const char* what) {
    if (!(p.mu2 < 1.0)) {
        throw DomainError(std::string(what) +
                          ": mu^2 = 1 (single port); use the single-port evaluator");
    }
}

int integer_omega(const DerivedParams& p, const char* what) {
    const double r = std::round(p.Omega);
    if (std::abs(p.Omega - r) > 1e-9 || r < 1.0) {
        throw DomainError(std::string(what) + ": Omega = " + std::to_string(p.Omega) +
                          " is not an integer; use equal interferer distances (Omega = U) "
                          "or Monte Carlo");
    }
    return static_cast<int>(r);
}

// Double integral E[bracket(x, y)^K] over the two anchor weights.
AnalyticResult port_selection_outage(int omega, int m, double kappa, const DerivedParams& p,
                                     const QuadratureSettings& q, const char* what) {
    check_settings(q);
    require_correlated(p, what);
    const int K = p.n_ports;
    if (kappa <= 0.0) return AnalyticResult{};
    const FamaBracket bracket(omega, m, kappa, p.mu2, q.kernel);
    const double x_hi = upper_limit(omega, q.envelope_cut);
    const double y_hi = upper_limit(m, q.envelope_cut);
    const double inner_rel = 0.1 * q.rel_tol;
    const double inner_abs = 0.1 * q.abs_tol;
    auto outer = [&](double y, BracketRange& range) {
        const double wy = weight(y, m);
        if (wy == 0.0) return 0.0;
        auto inner = [&](double x) {
            const double wx = weight(x, omega);
            if (wx == 0.0) return 0.0;
            const double br = bracket(x, y);
            range.add(br);
            return wx * kth_power(br, K);
        };
        return wy * integrate_checked(inner, 0.0, x_hi, inner_rel, inner_abs, q.max_subdivisions,
                                      what)
                        .value;
    };
    return integrate_outer(outer, y_hi, q, what);
}

// E over y of P(omega, kappa y^2) with y^2 ~ Gamma(shape, 1).
AnalyticResult single_port_outage(int omega, double shape, double kappa,
                                  const QuadratureSettings& q, const char* what) {
    check_settings(q);
    if (kappa <= 0.0) return AnalyticResult{};
    const double y_hi = upper_limit(shape, q.envelope_cut);
    auto f = [&](double y, BracketRange&) {
        const double wy = weight(y, shape);
        if (wy == 0.0) return 0.0;
        return wy * specfun::reg_lower_gamma(omega, kappa * y * y);
    };
    AnalyticResult out = integrate_outer(f, y_hi, q, what);
    out.bracket_min = out.bracket_max = std::numeric_limits<double>::quiet_NaN();
    return out;
}

// Conditional density of u = |g_k| sqrt(shape/spread) given the anchor x in
// the same units.
double conditional_density(double u, double x, int shape, double mu2) {
    const double c = 1.0 - mu2;
    if (u <= 0.0) return 0.0;
    if (mu2 == 0.0 || x == 0.0) {
        // anchor carries no information: u^2 ~ Gamma(shape, c)
        return std::exp(std::log(2.0) + (2.0 * shape - 1.0) * std::log(u) - u * u / c -
                        specfun::log_gamma(shape) - shape * std::log(c));
    }
    const double mx = std::sqrt(mu2) * x;
    const double z = 2.0 * mx * u / c;
    const double d = u - mx;
    return std::exp(std::log(2.0 * u / c) + (shape - 1.0) * std::log(u / mx) - d * d / c +
                    std::log(specfun::bessel_i_scaled(shape - 1, z)));
}

double joint_pdf(std::span<const double> tau, int shape, double spread, double mu2,
                 const QuadratureSettings& q, const char* what) {
    check_settings(q);
    if (tau.empty()) throw DomainError(std::string(what) + ": need at least one port");
    for (double t : tau) {
        if (!(t >= 0.0)) throw DomainError(std::string(what) + ": tau must be >= 0");
        if (t == 0.0 && shape > 1) return 0.0;
    }
    const double scale = std::sqrt(shape / spread);
    const double jac = std::pow(scale, static_cast<double>(tau.size()));
    if (mu2 >= 1.0) {
        if (tau.size() == 1) return nakagami_pdf(tau[0], shape, spread);
        throw DomainError(std::string(what) + ": fully correlated ports have no joint density");
    }
    if (mu2 == 0.0) {
        double prod = jac;
        for (double t : tau) prod *= conditional_density(t * scale, 0.0, shape, 0.0);
        return prod;
    }
    const double hi = upper_limit(shape, q.envelope_cut);
    auto f = [&](double x, BracketRange&) {
        double v = weight(x, shape);
        for (double t : tau) {
            if (v == 0.0) break;
            v *= conditional_density(t * scale, x, shape, mu2);
        }
        return v;
    };
    QuadratureSettings inner = q;
    inner.panels = std::max(q.panels, 16);
    // Density values are not probabilities; only the relative tolerance matters.
    inner.abs_tol = 1e-300;
    return jac * integrate_outer(f, hi, inner, what, false).probability;
}

}  // namespace

FamaBracket::FamaBracket(int omega, int m, double kappa, double mu2, BesselKernel kernel)
    : omega_(omega), m_(m), kappa_(kappa), mu2_(mu2), kernel_(kernel) {
    if (omega < 1 || m < 1) throw DomainError("bracket shapes must be positive integers");
    if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw DomainError("kappa must be finite and >= 0");
    if (!(mu2 >= 0.0 && mu2 < 1.0)) throw DomainError("bracket requires 0 <= mu^2 < 1");
    const double c = 1.0 - mu2;
    scale_ = std::sqrt(2.0 / (c * (1.0 + kappa)));
    const int b = omega + m - 1;
    coef_.assign(static_cast<std::size_t>(b), 0.0);
    const double log1k = std::log1p(kappa);
    for (int qq = 0; qq < b; ++qq) {
        for (int pp = 0; pp < b - qq; ++pp) {
            const double kp = pp == 0 ? 1.0 : std::exp(pp * std::log(kappa));
            coef_[static_cast<std::size_t>(qq + pp)] +=
                binomial(b - qq - 1, pp) * kp * std::exp((qq - b) * log1k);
        }
    }
}

double FamaBracket::operator()(double x, double y) const {
    const double mu = std::sqrt(mu2_);
    const double A = mu * y * std::sqrt(kappa_) * scale_;
    const double B = mu * x * scale_;
    const double z = A * B;
    const int first = 1 - omega_;
    const int count = static_cast<int>(coef_.size());

    thread_local std::vector<double> angular;
    bool have_angular = false;
    double sum = 0.0;
    for (int j = 0; j < count; ++j) {
        const int n = first + j;
        double w = 0.0;
        if (kernel_ == BesselKernel::UnscaledBessel) {
            if (A == 0.0 || B == 0.0) {
                w = bessel_term_series(n, A, B);
            } else {
                w = std::pow(B / A, n) * std::exp(-0.5 * (A * A + B * B)) * specfun::bessel_i(n, z);
            }
        } else if (A == 0.0 || B == 0.0) {
            w = bessel_term_series(n, A, B);
        } else {
            const double log_ratio = n * std::log(B / A);
            const double d = A - B;
            if (log_ratio - 0.5 * d * d < kLogUnderflow) {
                w = 0.0;
            } else if (z < 2.0 || std::abs(log_ratio) > 8.0 ||
                       kernel_ == BesselKernel::ScaledBessel) {
                w = bessel_term_series(n, A, B);
            } else {
                if (!have_angular) {
                    angular.resize(static_cast<std::size_t>(count));
                    specfun::angular_bessel_products(first, z, angular);
                    have_angular = true;
                }
                w = std::exp(log_ratio - 0.5 * d * d) * angular[static_cast<std::size_t>(j)];
            }
        }
        sum += coef_[static_cast<std::size_t>(j)] * w;
    }
    return specfun::marcum_q(m_, A, B) - sum;
}

double fama_bracket_unnormalized(double t, double t0, int omega, int m, double iota,
                                 double interf_spread, double theta, double mu2) {
    const double mu = std::sqrt(mu2);
    const double c = 1.0 - mu2;
    const double w = omega;
    const double Om = m;
    const double phi = interf_spread;
    const double D = iota * Om + w * phi * theta * theta;
    const int b = omega + m - 1;
    const double A = std::sqrt(2.0 * w * Om * mu2 * theta * theta * t0 * t0 / (c * D));
    const double B = std::sqrt(2.0 * w * Om * mu2 * t * t / (c * D));
    const double pre = std::pow(1.0 / (mu * t0), Om) * std::pow(mu * t / theta, 1.0 - w) *
                       std::pow(mu * iota * Om * t0 / D, b) *
                       std::exp(-(w * Om * mu2 * theta * theta * t0 * t0 + w * Om * mu2 * t * t) /
                                (c * D));
    const double z = 2.0 * w * Om * theta * mu2 * t * t0 / (c * D);
    double s = 0.0;
    for (int qq = 0; qq < b; ++qq) {
        for (int pp = 0; pp < b - qq; ++pp) {
            s += std::pow(phi * t / (Om * t0) * std::sqrt(w * c / (2.0 * iota)), qq + pp) *
                 std::pow(D / (phi * theta) * std::sqrt(2.0 / (iota * w * c)), qq) *
                 std::pow(std::sqrt(2.0 * w * theta * theta / (iota * c)), pp) *
                 binomial(b - qq - 1, pp) * specfun::bessel_i(1 - omega + qq + pp, z);
        }
    }
    return specfun::marcum_q(m, A, B) - pre * s;
}

double kappa_f(const DerivedParams& p) {
    return p.omega * p.theta_f * p.theta_f * p.sigma_I2 / p.iota;
}

double kappa_s(const DerivedParams& p) {
    return p.omega * p.phi * p.theta_s * p.theta_s / (p.iota * p.Omega);
}

AnalyticResult outage_f_fama(const DerivedParams& p, const QuadratureSettings& q) {
    return port_selection_outage(p.omega, 1, kappa_f(p), p, q, "outage_f_fama");
}

AnalyticResult outage_f_fama_k1(const DerivedParams& p, const QuadratureSettings& q) {
    return single_port_outage(p.omega, 1.0, kappa_f(p), q, "outage_f_fama_k1");
}

AnalyticResult outage_s_fama(const DerivedParams& p, const QuadratureSettings& q) {
    const int m = integer_omega(p, "outage_s_fama");
    AnalyticResult out = port_selection_outage(p.omega, m, kappa_s(p), p, q, "outage_s_fama");
    if (m <= p.omega) {
        out.warnings.push_back("Omega (" + std::to_string(m) + ") <= omega (" +
                               std::to_string(p.omega) +
                               "): outside the stated validity range of the closed form");
    }
    return out;
}

AnalyticResult outage_s_fama_k1(const DerivedParams& p, const QuadratureSettings& q) {
    return single_port_outage(p.omega, p.Omega, kappa_s(p), q, "outage_s_fama_k1");
}

AnalyticResult outage_snr(const DerivedParams& p, const QuadratureSettings& q) {
    check_settings(q);
    require_correlated(p, "outage_snr");
    const int K = p.n_ports;
    const double c = 1.0 - p.mu2;
    const double a_scale = std::sqrt(2.0 * p.mu2 / c);
    const double b_arg = p.noise_tau * std::sqrt(2.0 * p.omega / (p.iota * c));
    if (b_arg == 0.0) return AnalyticResult{};
    const double hi = upper_limit(p.omega, q.envelope_cut);
    auto f = [&](double x, BracketRange& range) {
        const double wx = weight(x, p.omega);
        if (wx == 0.0) return 0.0;
        const double cdf = specfun::marcum_q_complement(p.omega, x * a_scale, b_arg);
        range.add(cdf);
        return wx * kth_power(cdf, K);
    };
    return integrate_outer(f, hi, q, "outage_snr");
}

double outage_snr_k1(const DerivedParams& p) {
    return specfun::reg_lower_gamma(p.omega, p.omega * p.noise_tau * p.noise_tau / p.iota);
}

double joint_cdf_desired(std::span<const double> tau, const DerivedParams& p,
                         const QuadratureSettings& q) {
    check_settings(q);
    if (tau.empty()) throw DomainError("joint_cdf_desired: need at least one port");
    double tmin = std::numeric_limits<double>::infinity();
    for (double t : tau) {
        if (!(t >= 0.0)) throw DomainError("joint_cdf_desired: tau must be >= 0");
        tmin = std::min(tmin, t);
    }
    if (tmin == 0.0) return 0.0;
    const double scale = std::sqrt(p.omega / p.iota);
    if (p.mu2 >= 1.0) {
        if (std::isinf(tmin)) return 1.0;
        return specfun::reg_lower_gamma(p.omega, tmin * tmin * scale * scale);
    }
    const double c = 1.0 - p.mu2;
    const double a_scale = std::sqrt(2.0 * p.mu2 / c);
    const double hi = upper_limit(p.omega, q.envelope_cut);
    auto f = [&](double x, BracketRange&) {
        double v = weight(x, p.omega);
        for (double t : tau) {
            if (v == 0.0) break;
            if (std::isinf(t)) continue;
            v *= specfun::marcum_q_complement(p.omega, x * a_scale, t * scale * std::sqrt(2.0 / c));
        }
        return v;
    };
    return integrate_outer(f, hi, q, "joint_cdf_desired").probability;
}

double joint_pdf_desired(std::span<const double> tau, const DerivedParams& p,
                         const QuadratureSettings& q) {
    return joint_pdf(tau, p.omega, p.iota, p.mu2, q, "joint_pdf_desired");
}

double joint_pdf_s_interf(std::span<const double> tau, const DerivedParams& p,
                          const QuadratureSettings& q) {
    const int m = integer_omega(p, "joint_pdf_s_interf");
    return joint_pdf(tau, m, p.phi, p.mu2, q, "joint_pdf_s_interf");
}

}  // namespace famalab
