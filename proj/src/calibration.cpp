#include "titesafe/calibration.hpp"

#include <cmath>

#include "titesafe/boundaries.hpp"
#include "titesafe/numerics.hpp"

namespace titesafe {

IntegerBoundary integer_thresholds(const MethodSpec& method, const TrialDesign& design, double c) {
    IntegerBoundary bdry;
    bdry.thresholds.resize(design.n);
    for (int n = 1; n <= design.n; ++n) {
        int r;
        if (auto* b = std::get_if<Bayes>(&method)) {
            auto d = bayes_boundary(static_cast<double>(n), b->k, b->m, design.p0, c);
            if (!d) {
                bdry.thresholds[n - 1] = std::nullopt;
                continue;
            }
            r = *d;
        } else {
            double bv;
            if (auto* wt = std::get_if<WangTsiatis>(&method))
                bv = wt_boundary(static_cast<double>(n), design, wt->delta, c);
            else {
                const auto& s = std::get<Sprt>(method);
                bv = sprt_boundary(static_cast<double>(n), design.p0, s.p1, c);
            }
            r = static_cast<int>(std::ceil(bv - 1e-9));  // ties at the boundary reject
        }
        if (r < 1) r = 1;
        bdry.thresholds[n - 1] = (r <= n) ? std::optional<int>(r) : std::nullopt;
    }
    return bdry;
}

double binary_alpha(const IntegerBoundary& bdry, double p) {
    return binary_oc(bdry, p).reject_prob;
}

BinaryOC binary_oc(const IntegerBoundary& bdry, double p) {
    int N = static_cast<int>(bdry.thresholds.size());
    std::vector<double> pi(N + 2, 0.0), next(N + 2, 0.0);
    pi[0] = 1.0;
    BinaryOC oc;
    for (int n = 1; n <= N; ++n) {
        int rn = bdry.thresholds[n - 1] ? *bdry.thresholds[n - 1] : n + 1;
        std::fill(next.begin(), next.end(), 0.0);
        for (int d = 0; d < n; ++d) {
            if (pi[d] == 0.0) continue;
            double stay = pi[d] * (1.0 - p);
            double step = pi[d] * p;
            if (d < rn)
                next[d] += stay;
            else {  // unreachable: survivors always sit below the threshold
                oc.reject_prob += stay;
                oc.e_events += stay * d;
            }
            if (d + 1 < rn)
                next[d + 1] += step;
            else {
                oc.reject_prob += step;
                oc.e_events += step * (d + 1);
            }
        }
        std::swap(pi, next);
    }
    for (int d = 0; d <= N; ++d) oc.e_events += pi[d] * d;  // trials running to completion
    return oc;
}

StoppingRule calibrate(const MethodSpec& method, const TrialDesign& design) {
    validate(design, method);
    double lo, hi;
    if (std::holds_alternative<Bayes>(method)) {
        lo = 1e-9;
        hi = 1.0 - 1e-12;
    } else {
        lo = 1e-9;
        hi = 100.0;
    }
    auto alpha_at = [&](double c) {
        return binary_alpha(integer_thresholds(method, design, c), design.p0);
    };
    double target = design.alpha;
    if (alpha_at(hi) > target)
        throw calibration_error("calibrate: even the most conservative rule exceeds alpha");
    if (alpha_at(lo) <= target) {
        // no constraint binds; the most aggressive representable rule already conforms
        StoppingRule rule{design, method, lo, alpha_at(lo)};
        return rule;
    }
    // attained alpha is a nonincreasing step function of c; locate the step
    for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        if (alpha_at(mid) <= target)
            hi = mid;
        else
            lo = mid;
    }
    // verification: loosening past the step exceeds alpha (bisection invariant keeps
    // alpha(lo) > target; hi is the tight side)
    StoppingRule rule{design, method, hi, alpha_at(hi)};
    return rule;
}

double choose_p1(const TrialDesign& design, double target_power) {
    if (!(target_power > 0.0 && target_power < 1.0))
        throw domain_error("choose_p1: target power must lie in (0,1)");
    int dstar = design.n + 1;
    for (int d = 0; d <= design.n; ++d) {
        if (binom_sf(design.n, d, design.p0) <= design.alpha) {
            dstar = d;
            break;
        }
    }
    int k = static_cast<int>(std::floor(design.p0 * 1e4 + 1e-9)) + 1;
    for (; k < 10000; ++k) {
        double p1 = k / 1e4;
        if (binom_sf(design.n, dstar, p1) >= target_power) return p1;
    }
    return 1.0 - 1e-4;
}

}  // namespace titesafe
