// numerics.hpp — special functions and root finding used by boundary/calibration math.
#pragma once
#include <cmath>
#include <functional>
#include <stdexcept>

namespace titesafe {

struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline double log_beta(double a, double b) {
    if (a <= 0.0 || b <= 0.0) throw domain_error("log_beta: arguments must be positive");
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

namespace detail {

// Continued fraction for the incomplete beta (modified Lentz).
inline double betacf(double x, double a, double b) {
    const double tiny = 1e-300;
    const double eps = 1e-16;
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 500; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

} // namespace detail

// Regularized incomplete beta function I_x(a,b).
inline double reg_inc_beta(double x, double a, double b) {
    if (a <= 0.0 || b <= 0.0) throw domain_error("reg_inc_beta: a,b must be positive");
    if (x < 0.0 || x > 1.0) throw domain_error("reg_inc_beta: x outside [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    double lfront = a * std::log(x) + b * std::log1p(-x) - std::log(a) - log_beta(a, b);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return std::exp(lfront) * detail::betacf(x, a, b);
    }
    double lfront2 = b * std::log1p(-x) + a * std::log(x) - std::log(b) - log_beta(a, b);
    return 1.0 - std::exp(lfront2) * detail::betacf(1.0 - x, b, a);
}

inline double binom_pmf(int n, int d, double p) {
    if (n < 0 || d < 0 || d > n) throw domain_error("binom_pmf: require 0 <= d <= n");
    if (p < 0.0 || p > 1.0) throw domain_error("binom_pmf: p outside [0,1]");
    if (p == 0.0) return d == 0 ? 1.0 : 0.0;
    if (p == 1.0) return d == n ? 1.0 : 0.0;
    double lp = std::lgamma(n + 1.0) - std::lgamma(d + 1.0) - std::lgamma(n - d + 1.0) +
                d * std::log(p) + (n - d) * std::log1p(-p);
    return std::exp(lp);
}

// P(Bin(n,p) >= d), summed in log space from the mode-free tail.
inline double binom_sf(int n, int d, double p) {
    if (d <= 0) return 1.0;
    if (d > n) return 0.0;
    double sum = 0.0;
    for (int k = d; k <= n; ++k) sum += binom_pmf(n, k, p);
    return sum > 1.0 ? 1.0 : sum;
}

// Root of a monotone f on [lo,hi] with f(lo), f(hi) of opposite sign.
inline double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) throw domain_error("bisect: endpoints do not bracket a root");
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace titesafe
