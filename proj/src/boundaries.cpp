#include "titesafe/boundaries.hpp"

#include <cmath>
#include <limits>

#include "titesafe/numerics.hpp"

namespace titesafe {

double wt_boundary(double ess, const TrialDesign& design, double delta, double c) {
    if (ess < 0.0 || ess > design.n + 1e-9) throw domain_error("wt_boundary: ess outside [0,N]");
    if (delta < 0.0 || delta > 0.5) throw domain_error("wt_boundary: delta outside [0,0.5]");
    double p0 = design.p0;
    double spread = c * std::sqrt(p0 * (1.0 - p0)) * std::pow(ess, delta) *
                    std::pow(static_cast<double>(design.n), 0.5 - delta);
    return ess * p0 + spread;
}

double bayes_posterior_tail(double d, double ess, double k, double m, double p0) {
    if (d < 0.0 || d > ess + 1e-9) throw domain_error("bayes_posterior_tail: require 0 <= d <= ess");
    return 1.0 - reg_inc_beta(p0, k + d, m + ess - d);
}

std::optional<int> bayes_boundary(double ess, double k, double m, double p0, double cB) {
    int dmax = static_cast<int>(std::floor(ess + 1e-9));
    for (int d = 0; d <= dmax; ++d) {
        if (bayes_posterior_tail(d, ess, k, m, p0) >= cB) return d;
    }
    return std::nullopt;
}

double sprt_boundary(double ess, double p0, double p1, double cS) {
    if (!(p1 > p0)) throw domain_error("sprt_boundary: p1 must exceed p0");
    double ltheta = std::log(sprt_theta(p0, p1));
    double slope = -(std::log1p(-p1) - std::log1p(-p0)) / ltheta;
    return cS / ltheta + slope * ess;
}

double boundary_value(const StoppingRule& rule, double ess) {
    const auto& d = rule.design;
    if (ess < 0.0 || ess > d.n + 1e-9) throw domain_error("boundary_value: ess outside [0,N]");
    if (auto* wt = std::get_if<WangTsiatis>(&rule.method))
        return wt_boundary(ess, d, wt->delta, rule.critical);
    if (auto* s = std::get_if<Sprt>(&rule.method))
        return sprt_boundary(ess, d.p0, s->p1, rule.critical);
    const auto& b = std::get<Bayes>(rule.method);
    auto bd = bayes_boundary(ess, b.k, b.m, d.p0, rule.critical);
    if (!bd) return std::numeric_limits<double>::infinity();
    return static_cast<double>(*bd < 1 ? 1 : *bd);
}

ScoreStatistics score_statistics(const Snapshot& snap, const TrialDesign& design) {
    if (!(snap.ess > 0.0)) throw domain_error("score_statistics: ess must be positive");
    double v = design.p0 * (1.0 - design.p0);
    ScoreStatistics st;
    st.score = (snap.d1 - snap.ess * design.p0) / v;
    st.information = snap.ess / v;
    st.z = (snap.d1 - snap.ess * design.p0) / std::sqrt(snap.ess * v);
    st.info_fraction = snap.ess / design.n;
    return st;
}

std::optional<double> invert_boundary(const StoppingRule& rule, int d) {
    if (d < 1) throw domain_error("invert_boundary: d must be >= 1");
    const auto& design = rule.design;
    double N = design.n;
    double dd = d;

    if (auto* b = std::get_if<Bayes>(&rule.method)) {
        // tail(d, ess) decreases in ess; breakpoint where it crosses the critical value
        double cB = rule.critical;
        auto tail = [&](double e) { return bayes_posterior_tail(dd, e, b->k, b->m, design.p0); };
        if (dd > N) return std::nullopt;
        if (tail(dd) < cB) return std::nullopt;
        if (tail(N) >= cB) return N;
        double root = bisect([&](double e) { return tail(e) - cB; }, dd, N, 1e-10);
        return root;
    }

    auto bval = [&](double e) {
        if (auto* wt = std::get_if<WangTsiatis>(&rule.method))
            return wt_boundary(e, design, wt->delta, rule.critical);
        const auto& s = std::get<Sprt>(rule.method);
        return sprt_boundary(e, design.p0, s.p1, rule.critical);
    };
    // b is continuous and increasing; largest ess with b(ess) <= d
    if (bval(N) <= dd) return N;
    if (bval(0.0) > dd) return std::nullopt;
    double root;
    if (auto* s = std::get_if<Sprt>(&rule.method)) {
        double ltheta = std::log(sprt_theta(design.p0, s->p1));
        double slope = -(std::log1p(-s->p1) - std::log1p(-design.p0)) / ltheta;
        root = (dd - rule.critical / ltheta) / slope;
    } else {
        root = bisect([&](double e) { return bval(e) - dd; }, 0.0, N, 1e-10);
    }
    if (root < dd) return std::nullopt;  // d events imply ess >= d
    return root;
}

BoundaryTable tabulate(const StoppingRule& rule) {
    BoundaryTable table;
    double N = rule.design.n;
    std::optional<double> prev_hi;
    for (int d = 1; d <= rule.design.n; ++d) {
        auto hi = invert_boundary(rule, d);
        if (!hi) {
            if (prev_hi) break;  // boundary has left [d, N] for good
            continue;
        }
        BoundaryRow row;
        row.reject_count = d;
        row.ess_lo = prev_hi ? *prev_hi : static_cast<double>(d);
        row.ess_hi = *hi;
        table.rows.push_back(row);
        prev_hi = *hi;
        if (*hi >= N - 1e-9) break;
    }
    return table;
}

}  // namespace titesafe
