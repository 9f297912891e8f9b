#include "titesafe/types.hpp"

#include <cmath>

namespace titesafe {

void validate(const TrialDesign& design, const MethodSpec& method) {
    if (design.n <= 0) throw validation_error("design: N must be positive");
    if (!(design.p0 > 0.0 && design.p0 < 1.0)) throw validation_error("design: p0 must lie in (0,1)");
    if (!(design.alpha > 0.0 && design.alpha < 1.0))
        throw validation_error("design: alpha must lie in (0,1)");
    if (!(design.tau > 0.0)) throw validation_error("design: tau must be positive");
    if (design.accrual < 0.0) throw validation_error("design: accrual must be nonnegative");

    if (auto* wt = std::get_if<WangTsiatis>(&method)) {
        if (wt->delta < 0.0 || wt->delta > 0.5)
            throw validation_error("method: delta must lie in [0, 0.5]");
    } else if (auto* b = std::get_if<Bayes>(&method)) {
        if (!(b->k > 0.0)) throw validation_error("method: prior k must be positive");
        if (!(b->m > 0.0)) throw validation_error("method: prior m must be positive");
    } else if (auto* s = std::get_if<Sprt>(&method)) {
        if (!(s->p1 > design.p0)) throw validation_error("method: p1 must exceed p0");
        if (s->p1 >= 1.0) throw validation_error("method: p1 must lie below 1");
        double theta = sprt_theta(design.p0, s->p1);
        if (std::fabs(s->theta - theta) > 1e-9 * theta)
            throw validation_error("method: theta must equal the p1:p0 odds ratio");
    }
}

void validate_patients(const std::vector<PatientRecord>& patients, const TrialDesign& design) {
    for (const auto& pt : patients) {
        if (pt.enroll_time < 0.0) throw validation_error("patient: enroll_time must be nonnegative");
        bool has_event = pt.event_time.has_value();
        if (has_event != (pt.cause == 1 || pt.cause == 2))
            throw validation_error("patient: event_time present iff cause in {1,2}");
        if (pt.cause < 0 || pt.cause > 2) throw validation_error("patient: cause must be 0, 1 or 2");
        if (has_event && (*pt.event_time <= 0.0 || *pt.event_time > design.tau))
            throw validation_error("patient: event_time must lie in (0, tau]");
    }
}

}  // namespace titesafe
