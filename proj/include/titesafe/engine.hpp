// engine.hpp — weights, snapshots, and the sequential monitoring loop.
#pragma once
#include <optional>

#include "types.hpp"

namespace titesafe {

// G(s - E_j) under the uniform-G recommendation: clamp(follow_up / tau, 0, 1).
double weight(double follow_up, double tau);

Snapshot snapshot(const std::vector<PatientRecord>& patients, double s, const TrialDesign& design);

struct TimelineEntry {
    double time = 0.0;
    Snapshot snap;
    double boundary = 0.0;  // b(ess) at this decision point
    bool triggered = false;
};

struct MonitoringResult {
    bool stopped = false;
    std::optional<double> stop_time;
    std::optional<Snapshot> snapshot_at_stop;
    std::vector<TimelineEntry> timeline;
};

// Evaluates D1(s) >= b(ess(s)) at each distinct cause-1 event calendar time.
MonitoringResult monitor(const std::vector<PatientRecord>& patients, const StoppingRule& rule);

}  // namespace titesafe
