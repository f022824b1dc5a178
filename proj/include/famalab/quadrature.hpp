#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace famalab::quad {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point rule from Newton iteration on P_n. Rules of size 64 * 2^j are
/// cached for the lifetime of the process.
const GaussLegendreRule& gauss_legendre(std::size_t n);

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    int intervals = 0;
    int evaluations = 0;
    bool converged = true;
};

/// Globally adaptive 7/15-point Gauss-Kronrod on [a, b]. Splits the interval
/// with the largest error estimate until error <= max(abs_tol, rel_tol*|value|)
/// or `max_intervals` is reached (then `converged` is false).
QuadResult gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                         double rel_tol, double abs_tol, int max_intervals);

/// Point beyond `start` where the envelope has fallen below `cut` times its
/// value at `start`. The envelope must be unimodal with its peak at or before
/// `start`. Step doubling followed by bisection.
double tail_cutoff(const std::function<double(double)>& log_envelope, double start, double cut);

}  // namespace famalab::quad
