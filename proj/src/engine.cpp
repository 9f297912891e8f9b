#include "titesafe/engine.hpp"

#include <algorithm>
#include <cmath>

#include "titesafe/boundaries.hpp"
#include "titesafe/numerics.hpp"

namespace titesafe {

double weight(double follow_up, double tau) {
    if (!(tau > 0.0)) throw domain_error("weight: tau must be positive");
    return std::clamp(follow_up / tau, 0.0, 1.0);
}

Snapshot snapshot(const std::vector<PatientRecord>& patients, double s, const TrialDesign& design) {
    Snapshot snap;
    snap.s = s;
    for (const auto& pt : patients) {
        if (!(pt.enroll_time <= s)) continue;  // enrolled exactly at s: counted, zero weight
        ++snap.n_enrolled;
        double follow = std::min(design.tau, s - pt.enroll_time);
        Observation ob;
        // classify in calendar space: decision times are constructed as fl(E+T),
        // so the comparison is exact for the event under evaluation
        if (pt.cause != 0 && pt.enroll_time + *pt.event_time <= s) {
            ob.cause = pt.cause;
            ob.time = *pt.event_time;
            if (pt.cause == 1)
                ++snap.d1;
            else
                ++snap.d2;
            snap.ess += 1.0;
        } else {
            ob.cause = 0;
            ob.time = std::max(follow, 0.0);
            snap.ess += weight(follow, design.tau);
        }
        snap.obs.push_back(ob);
    }
    return snap;
}

MonitoringResult monitor(const std::vector<PatientRecord>& patients, const StoppingRule& rule) {
    validate(rule.design, rule.method);
    validate_patients(patients, rule.design);

    // decision points: distinct cause-1 event calendar times, ties processed jointly
    std::vector<double> times;
    for (const auto& pt : patients)
        if (pt.cause == 1) times.push_back(pt.enroll_time + *pt.event_time);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    MonitoringResult result;
    for (double s : times) {
        TimelineEntry entry;
        entry.time = s;
        entry.snap = snapshot(patients, s, rule.design);
        entry.boundary = boundary_value(rule, entry.snap.ess);
        entry.triggered = entry.snap.d1 >= entry.boundary - 1e-9;
        result.timeline.push_back(entry);
        if (entry.triggered) {
            result.stopped = true;
            result.stop_time = s;
            result.snapshot_at_stop = entry.snap;
            break;
        }
    }
    return result;
}

}  // namespace titesafe
