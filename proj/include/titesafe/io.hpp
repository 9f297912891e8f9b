// io.hpp — JSON rule serialization and CSV formats.
#pragma once
#include <string>

#include "calibration.hpp"
#include "engine.hpp"
#include "simulator.hpp"
#include "types.hpp"

namespace titesafe {

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string rule_to_json(const StoppingRule& rule);
StoppingRule rule_from_json(const std::string& text);

std::string calibration_report_json(const StoppingRule& rule, const IntegerBoundary& bdry);

// CSV: patient_id,enroll_time,event_time,cause (empty event_time when cause=0)
std::vector<PatientRecord> patients_from_csv(const std::string& text, const TrialDesign& design);

// CSV: time,d1,d2,ess,boundary,triggered
std::string timeline_to_csv(const MonitoringResult& result);

std::string table_to_csv(const BoundaryTable& table);
std::string table_to_text(const BoundaryTable& table);

// CSV: ess,boundary over a dense grid (boundary-curve export)
std::string boundary_curve_csv(const StoppingRule& rule, int points);

struct OCRow {
    std::string type;
    double p = 0.0, p_compt = 0.0;
    OCResult oc;
};
// CSV: type,p,p.compt,reject_prob,e_events,e_enrolled,e_duration
std::string oc_rows_to_csv(const std::vector<OCRow>& rows);

std::string alpha_spend_csv(const std::vector<std::pair<double, double>>& curve);

}  // namespace titesafe
