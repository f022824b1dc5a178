#pragma once

#include <span>

namespace famalab::specfun {

/// Gamma function for x > 0. Throws DomainError for x <= 0 and
/// OverflowError once the result exceeds the double range (x > ~171.6).
double gamma_fn(double x);

/// log Gamma(x) for x > 0 (reentrant).
double log_gamma(double x);

/// Rising factorial (a)_p = a (a+1) ... (a+p-1); (a)_0 = 1.
double pochhammer(double a, int p);

/// Regularized incomplete gamma functions P(a, x) and Q(a, x) = 1 - P(a, x).
/// Series for x < a + 1, Lentz continued fraction otherwise.
double reg_lower_gamma(double a, double x);
double reg_upper_gamma(double a, double x);

/// Bessel function of the first kind, order zero.
double bessel_j0(double x);

/// Modified Bessel function of the first kind for integer order.
/// I_{-n} = I_n. The unscaled form throws OverflowError when e^x overflows.
double bessel_i(int order, double x);

/// e^{-x} I_n(x); finite for every representable x >= 0.
double bessel_i_scaled(int order, double x);

/// Generalized Marcum Q-function Q_nu(a, b).
///
/// For nu > 0 this is the Poisson mixture
///   sum_k e^{-a^2/2} (a^2/2)^k / k! * Q(nu + k, b^2/2)
/// summed outward from the Poisson mode with a relative-term cutoff of 1e-15
/// and a hard cap of 1e5 terms (NumericalError past the cap).
/// Non-positive integer orders go through the complement identity
///   Q_{1-m}(a, b) = 1 - Q_m(b, a).
/// Any other nu <= 0 is a DomainError.
double marcum_q(double nu, double a, double b);

/// 1 - Q_nu(a, b), computed directly so it keeps absolute accuracy when
/// Q_nu is close to one.
double marcum_q_complement(double nu, double a, double b);

/// Input of the angular form of e^{-z} I_n(z).
///
/// `order` is the Bessel order n (may be negative), `coupling` the argument
/// z >= 0, and `damping` the Gaussian co-factor that multiplies the result
/// in the outage integrands.
struct AngularIntegralSpec {
    int order = 0;
    double coupling = 0.0;
    double damping = 0.0;
};

/// (1/pi) * integral_0^pi cos(n theta) exp(-2 z sin^2(theta/2)) dtheta,
/// which equals e^{-z} I_n(z). Gauss-Legendre with 64 nodes on [0, pi],
/// doubled until two successive results agree to 1e-10 relative.
double angular_bessel_product(const AngularIntegralSpec& spec);

/// e^{-damping} * angular_bessel_product(spec).
double damped_angular_bessel_product(const AngularIntegralSpec& spec);

/// Batched variant: out[j] = angular_bessel_product({first_order + j, coupling}).
/// All orders share one set of quadrature nodes.
void angular_bessel_products(int first_order, double coupling, std::span<double> out);

}  // namespace famalab::specfun
