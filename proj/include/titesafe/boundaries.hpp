// boundaries.hpp — boundary functions, posterior tails, inversion, tabulation.
#pragma once
#include <optional>

#include "types.hpp"

namespace titesafe {

double wt_boundary(double ess, const TrialDesign& design, double delta, double c);

// Posterior tail P(p > p0 | D1 = d, ess) under prior Beta(k,m): 1 - I_{p0}(k+d, m+ess-d).
double bayes_posterior_tail(double d, double ess, double k, double m, double p0);

// Smallest integer d <= floor(ess) with tail >= cB; nullopt when no rejection is possible.
std::optional<int> bayes_boundary(double ess, double k, double m, double p0, double cB);

double sprt_boundary(double ess, double p0, double p1, double cS);

// b(ess) for the rule's method; +infinity when no count can reject (Bayes unreachable).
double boundary_value(const StoppingRule& rule, double ess);

ScoreStatistics score_statistics(const Snapshot& snap, const TrialDesign& design);

// Largest ess with b(ess) <= d, clamped to [d, N]; nullopt = boundary never reaches d.
std::optional<double> invert_boundary(const StoppingRule& rule, int d);

BoundaryTable tabulate(const StoppingRule& rule);

}  // namespace titesafe
