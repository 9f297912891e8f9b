// simulator.hpp — scenario generation and Monte Carlo operating characteristics.
#pragma once
#include <cstdint>
#include <utility>

#include "rng.hpp"
#include "types.hpp"

namespace titesafe {

enum class EventDist { Uniform, Exponential, Weibull };

struct Scenario {
    TrialDesign design;
    double p_true = 0.0;     // F1(tau)
    double p_compete = 0.0;  // F2(tau), 0 for none
    EventDist event_dist = EventDist::Uniform;
    double shape = 1.0;  // Weibull shape
};

void validate_scenario(const Scenario& sc);

enum class Mode { Tite, Binary };

struct OCResult {
    double reject_prob = 0.0, se_reject = 0.0;
    double e_events = 0.0, se_events = 0.0;
    double e_enrolled = 0.0, se_enrolled = 0.0;
    double e_duration = 0.0, se_duration = 0.0;
    // (info_fraction grid point, cumulative rejection probability)
    std::vector<std::pair<double, double>> alpha_spend;
};

std::vector<PatientRecord> gen_trial(const Scenario& sc, Rng& rng);

OCResult simulate_oc(const StoppingRule& rule, const Scenario& sc, int reps,
                     uint64_t master_seed, Mode mode, int threads = 1);

struct CompareEntry {
    OCResult oc;
    Mode mode = Mode::Tite;
};
struct CompareResult {
    std::vector<CompareEntry> per_rule;
    // ratios[i][j] = E(tox) of rule i / E(tox) of rule j, common random numbers
    std::vector<std::vector<double>> tox_ratio;
};

CompareResult compare(const std::vector<StoppingRule>& rules, const std::vector<Mode>& modes,
                      const Scenario& sc, int reps, uint64_t master_seed, int threads = 1);

std::vector<std::pair<double, double>> alpha_spend_curve(const StoppingRule& rule,
                                                         const Scenario& sc, int reps,
                                                         uint64_t master_seed, int threads = 1);

}  // namespace titesafe
