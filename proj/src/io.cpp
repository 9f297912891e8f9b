#include "titesafe/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "titesafe/boundaries.hpp"

namespace titesafe {

using json = nlohmann::ordered_json;

namespace {

json design_to_json(const TrialDesign& d) {
    return json{{"n", d.n},         {"p0", d.p0},           {"tau", d.tau},
                {"alpha", d.alpha}, {"accrual", d.accrual}};
}

TrialDesign design_from_json(const json& j) {
    TrialDesign d;
    d.n = j.at("n").get<int>();
    d.p0 = j.at("p0").get<double>();
    d.tau = j.at("tau").get<double>();
    d.alpha = j.at("alpha").get<double>();
    d.accrual = j.at("accrual").get<double>();
    return d;
}

json method_to_json(const MethodSpec& m) {
    if (auto* wt = std::get_if<WangTsiatis>(&m)) return json{{"type", "wt"}, {"delta", wt->delta}};
    if (auto* b = std::get_if<Bayes>(&m)) return json{{"type", "bayes"}, {"k", b->k}, {"m", b->m}};
    const auto& s = std::get<Sprt>(m);
    return json{{"type", "sprt"}, {"p1", s.p1}, {"theta", s.theta}};
}

MethodSpec method_from_json(const json& j) {
    std::string type = j.at("type").get<std::string>();
    if (type == "wt") return WangTsiatis{j.at("delta").get<double>()};
    if (type == "bayes") return Bayes{j.at("k").get<double>(), j.at("m").get<double>()};
    if (type == "sprt") return Sprt{j.at("p1").get<double>(), j.at("theta").get<double>()};
    throw parse_error("rule JSON: unknown method type '" + type + "'");
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double round2(double v) { return std::round(v * 100.0) / 100.0; }

}  // namespace

std::string rule_to_json(const StoppingRule& rule) {
    json j{{"design", design_to_json(rule.design)},
           {"method", method_to_json(rule.method)},
           {"critical", rule.critical},
           {"attained_alpha", rule.attained_alpha}};
    return j.dump(2) + "\n";
}

StoppingRule rule_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw parse_error(std::string("rule JSON: ") + e.what());
    }
    StoppingRule rule;
    rule.design = design_from_json(j.at("design"));
    rule.method = method_from_json(j.at("method"));
    rule.critical = j.at("critical").get<double>();
    rule.attained_alpha = j.at("attained_alpha").get<double>();
    validate(rule.design, rule.method);
    return rule;
}

std::string calibration_report_json(const StoppingRule& rule, const IntegerBoundary& bdry) {
    json j{{"design", design_to_json(rule.design)},
           {"method", method_to_json(rule.method)},
           {"critical", rule.critical},
           {"attained_alpha", rule.attained_alpha}};
    json thr = json::array();
    for (const auto& t : bdry.thresholds)
        thr.push_back(t ? json(*t) : json(nullptr));
    j["thresholds"] = thr;
    return j.dump(2) + "\n";
}

std::vector<PatientRecord> patients_from_csv(const std::string& text, const TrialDesign& design) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw parse_error("patient CSV: empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "patient_id,enroll_time,event_time,cause")
        throw parse_error("patient CSV: expected header patient_id,enroll_time,event_time,cause");
    std::vector<PatientRecord> out;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field[4];
        for (int i = 0; i < 4; ++i)
            if (!std::getline(row, field[i], ','))
                throw parse_error("patient CSV: line " + std::to_string(lineno) + ": need 4 fields");
        PatientRecord pt;
        try {
            pt.enroll_time = std::stod(field[1]);
            pt.cause = std::stoi(field[3]);
            if (!field[2].empty()) pt.event_time = std::stod(field[2]);
        } catch (const std::exception&) {
            throw parse_error("patient CSV: line " + std::to_string(lineno) + ": bad number");
        }
        out.push_back(pt);
    }
    validate_patients(out, design);
    return out;
}

std::string timeline_to_csv(const MonitoringResult& result) {
    std::string out = "time,d1,d2,ess,boundary,triggered\n";
    for (const auto& e : result.timeline) {
        out += fmt("%.6f", e.time) + "," + std::to_string(e.snap.d1) + "," +
               std::to_string(e.snap.d2) + "," + fmt("%.6f", e.snap.ess) + ",";
        out += std::isinf(e.boundary) ? std::string("inf") : fmt("%.6f", e.boundary);
        out += e.triggered ? ",1\n" : ",0\n";
    }
    return out;
}

std::string table_to_csv(const BoundaryTable& table) {
    std::string out = "ess_lo,ess_hi,reject_count\n";
    for (const auto& r : table.rows)
        out += fmt("%.10g", r.ess_lo) + "," + fmt("%.10g", r.ess_hi) + "," +
               std::to_string(r.reject_count) + "\n";
    return out;
}

std::string table_to_text(const BoundaryTable& table) {
    std::string out = "Effective Sample Size   Reject Bdry\n";
    double prev_hi = 0.0;
    for (size_t i = 0; i < table.rows.size(); ++i) {
        const auto& r = table.rows[i];
        double lo = i == 0 ? round2(r.ess_lo) : round2(prev_hi) + 0.01;
        double hi = round2(r.ess_hi);
        prev_hi = r.ess_hi;
        char buf[80];
        std::snprintf(buf, sizeof buf, "   %6.2f - %6.2f     %8d\n", lo, hi, r.reject_count);
        out += buf;
    }
    return out;
}

std::string boundary_curve_csv(const StoppingRule& rule, int points) {
    std::string out = "ess,boundary\n";
    for (int i = 0; i <= points; ++i) {
        double ess = rule.design.n * static_cast<double>(i) / points;
        double b = boundary_value(rule, ess);
        out += fmt("%.6f", ess) + "," + (std::isinf(b) ? std::string("inf") : fmt("%.6f", b)) + "\n";
    }
    return out;
}

std::string oc_rows_to_csv(const std::vector<OCRow>& rows) {
    std::string out = "type,p,p.compt,reject_prob,e_events,e_enrolled,e_duration\n";
    for (const auto& r : rows) {
        out += r.type + "," + fmt("%g", r.p) + "," + fmt("%g", r.p_compt) + "," +
               fmt("%.4f", r.oc.reject_prob) + "," + fmt("%.4f", r.oc.e_events) + "," +
               fmt("%.4f", r.oc.e_enrolled) + "," + fmt("%.4f", r.oc.e_duration) + "\n";
    }
    return out;
}

std::string alpha_spend_csv(const std::vector<std::pair<double, double>>& curve) {
    std::string out = "info_fraction,cum_type1\n";
    for (const auto& [f, c] : curve) out += fmt("%.2f", f) + "," + fmt("%.6f", c) + "\n";
    return out;
}

}  // namespace titesafe
