// types.hpp — shared domain types.
#pragma once
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace titesafe {

struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TrialDesign {
    int n = 0;             // max patients N
    double p0 = 0.0;       // null cumulative incidence at tau
    double tau = 0.0;      // evaluation window, days
    double alpha = 0.05;   // nominal type I error
    double accrual = 0.0;  // enrollment period A, days
};

// cause: 0 = no event within tau, 1 = toxicity, 2 = competing risk
struct PatientRecord {
    double enroll_time = 0.0;
    std::optional<double> event_time;  // days from enrollment, in (0, tau]
    int cause = 0;
};

struct Observation {
    double time = 0.0;  // X_j(s) in [0, tau]
    int cause = 0;      // delta_j(s)
};

struct Snapshot {
    double s = 0.0;
    int d1 = 0;
    int d2 = 0;
    double ess = 0.0;
    int n_enrolled = 0;
    std::vector<Observation> obs;
};

struct WangTsiatis {
    double delta = 0.0;  // 0.5 = Pocock, 0 = O'Brien-Fleming
};
struct Bayes {
    double k = 0.0;  // prior Beta(k, m)
    double m = 0.0;
};
struct Sprt {
    double p1 = 0.0;
    double theta = 0.0;  // odds ratio of p1 to p0
};
using MethodSpec = std::variant<WangTsiatis, Bayes, Sprt>;

struct StoppingRule {
    TrialDesign design;
    MethodSpec method;
    double critical = 0.0;
    double attained_alpha = 0.0;
};

struct BoundaryRow {
    double ess_lo = 0.0;
    double ess_hi = 0.0;
    int reject_count = 0;
};
struct BoundaryTable {
    std::vector<BoundaryRow> rows;
};

struct ScoreStatistics {
    double score = 0.0;
    double information = 0.0;
    double z = 0.0;
    double info_fraction = 0.0;
};

inline double sprt_theta(double p0, double p1) {
    return (p1 / (1.0 - p1)) / (p0 / (1.0 - p0));
}

void validate(const TrialDesign& design, const MethodSpec& method);
void validate_patients(const std::vector<PatientRecord>& patients, const TrialDesign& design);

}  // namespace titesafe
