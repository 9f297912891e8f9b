// titesafe — construct, tabulate, and evaluate TITE safety stopping rules.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "titesafe/boundaries.hpp"
#include "titesafe/calibration.hpp"
#include "titesafe/engine.hpp"
#include "titesafe/io.hpp"
#include "titesafe/numerics.hpp"
#include "titesafe/simulator.hpp"

using namespace titesafe;

namespace {

int default_threads() {
    if (const char* env = std::getenv("TITESAFE_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot write " + path);
    out << text;
}

std::string method_label(const MethodSpec& m) {
    if (auto* wt = std::get_if<WangTsiatis>(&m)) {
        if (wt->delta == 0.5) return "POC";
        if (wt->delta == 0.0) return "OBF";
        return "WT";
    }
    if (std::holds_alternative<Bayes>(m)) return "Bayes";
    return "SPRT";
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

EventDist parse_dist(const std::string& s) {
    if (s == "uniform") return EventDist::Uniform;
    if (s == "exponential") return EventDist::Exponential;
    if (s == "weibull") return EventDist::Weibull;
    throw validation_error("unknown event distribution: " + s);
}

Mode parse_mode(const std::string& s) {
    if (s == "tite") return Mode::Tite;
    if (s == "binary") return Mode::Binary;
    throw validation_error("unknown mode: " + s);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"TITE safety stopping rules: calibration, tabulation, operating characteristics"};
    app.require_subcommand(1);

    // ---- calc-rule ----
    auto* calc = app.add_subcommand("calc-rule", "calibrate a stopping rule");
    int n = 0;
    double p0 = 0, alpha = 0.05, tau = 30.0, accrual = 730.0;
    std::string method, out_rule, out_curve, out_report;
    double delta = 0.0, prior_k = 0, prior_m = 0, prior_nu = 0, p1 = 0, power = 0;
    calc->add_option("--n", n, "cohort size N")->required();
    calc->add_option("--p0", p0, "null event probability at tau")->required();
    calc->add_option("--alpha", alpha, "nominal type I error");
    calc->add_option("--tau", tau, "evaluation window, days");
    calc->add_option("--accrual", accrual, "accrual period, days");
    calc->add_option("--method", method, "wt | bayes | sprt")->required();
    calc->add_option("--delta", delta, "Wang-Tsiatis shape (0.5 Pocock, 0 OBF)");
    calc->add_option("--prior-k", prior_k, "Bayes prior k");
    calc->add_option("--prior-m", prior_m, "Bayes prior m");
    calc->add_option("--prior-nu", prior_nu, "Bayes prior patients (k = nu*p0, m = nu*(1-p0))");
    calc->add_option("--p1", p1, "SPRT alternative rate");
    calc->add_option("--power", power, "choose p1 with this exact-test power");
    calc->add_option("--out", out_rule, "rule JSON output path")->required();
    calc->add_option("--curve", out_curve, "boundary-curve CSV output path");
    calc->add_option("--report", out_report, "calibration report JSON output path");

    // ---- table ----
    auto* tab = app.add_subcommand("table", "tabulate a calibrated rule");
    std::string rule_path, out_csv;
    tab->add_option("--rule", rule_path, "rule JSON")->required();
    tab->add_option("--csv", out_csv, "write table CSV here");

    // ---- oc ----
    auto* oc = app.add_subcommand("oc", "Monte Carlo operating characteristics");
    std::string oc_rule, ps_s, ps_compt_s = "0", dist_s = "uniform", mode_s = "tite", oc_out;
    double oc_tau = -1, oc_accrual = -1, shape = 1.0;
    int reps = 10000, threads = default_threads();
    uint64_t seed = 12345;
    oc->add_option("--rule", oc_rule, "rule JSON")->required();
    oc->add_option("--ps", ps_s, "true event probabilities, comma separated")->required();
    oc->add_option("--ps-compt", ps_compt_s, "competing-risk probabilities (single or per-p)");
    oc->add_option("--tau", oc_tau, "override evaluation window");
    oc->add_option("--accrual", oc_accrual, "override accrual period");
    oc->add_option("--dist", dist_s, "uniform | exponential | weibull");
    oc->add_option("--shape", shape, "Weibull shape");
    oc->add_option("--reps", reps, "Monte Carlo replications");
    oc->add_option("--seed", seed, "master seed");
    oc->add_option("--mode", mode_s, "tite | binary");
    oc->add_option("--threads", threads, "worker threads (or env TITESAFE_THREADS)");
    oc->add_option("--out", oc_out, "output CSV path (default stdout)");
    std::string spend_out;
    oc->add_option("--alpha-spend", spend_out, "also write the alpha-spend curve CSV here");

    // ---- evaluate ----
    auto* ev = app.add_subcommand("evaluate", "replay observed patient data against a rule");
    std::string ev_rule, ev_patients, ev_out;
    ev->add_option("--rule", ev_rule, "rule JSON")->required();
    ev->add_option("--patients", ev_patients, "patient CSV")->required();
    ev->add_option("--out", ev_out, "timeline CSV path (default stdout)");

    // ---- compare ----
    auto* cmp = app.add_subcommand("compare", "paired comparison with common random numbers");
    std::vector<std::string> cmp_rules;
    std::string cmp_modes, cmp_out, cmp_dist = "uniform";
    double cmp_p = 0, cmp_pc = 0, cmp_tau = -1, cmp_accrual = -1, cmp_shape = 1.0;
    int cmp_reps = 10000, cmp_threads = default_threads();
    uint64_t cmp_seed = 12345;
    cmp->add_option("--rules", cmp_rules, "rule JSON files")->required()->expected(-1);
    cmp->add_option("--modes", cmp_modes, "comma list of tite|binary, one per rule (default all tite)");
    cmp->add_option("--p", cmp_p, "true event probability")->required();
    cmp->add_option("--p-compt", cmp_pc, "competing-risk probability");
    cmp->add_option("--tau", cmp_tau, "override evaluation window");
    cmp->add_option("--accrual", cmp_accrual, "override accrual period");
    cmp->add_option("--dist", cmp_dist, "uniform | exponential | weibull");
    cmp->add_option("--shape", cmp_shape, "Weibull shape");
    cmp->add_option("--reps", cmp_reps, "Monte Carlo replications");
    cmp->add_option("--seed", cmp_seed, "master seed");
    cmp->add_option("--threads", cmp_threads, "worker threads");
    cmp->add_option("--out", cmp_out, "output CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (calc->parsed()) {
            TrialDesign design{n, p0, tau, alpha, accrual};
            MethodSpec spec = WangTsiatis{delta};
            if (method == "wt") {
                spec = WangTsiatis{delta};
            } else if (method == "bayes") {
                double k = prior_k, m = prior_m;
                if (prior_nu > 0) {
                    k = prior_nu * p0;
                    m = prior_nu * (1.0 - p0);
                }
                spec = Bayes{k, m};
            } else if (method == "sprt") {
                double a1 = p1;
                if (power > 0) a1 = choose_p1(design, power);
                spec = Sprt{a1, a1 > 0 && a1 < 1 ? sprt_theta(p0, a1) : 0.0};
            } else {
                std::cerr << "unknown method: " << method << "\n";
                return 1;
            }
            StoppingRule rule = calibrate(spec, design);
            spill(out_rule, rule_to_json(rule));
            if (!out_curve.empty()) spill(out_curve, boundary_curve_csv(rule, 400));
            if (!out_report.empty())
                spill(out_report, calibration_report_json(
                                      rule, integer_thresholds(rule.method, design, rule.critical)));
            std::cout << method_label(rule.method) << ": critical " << rule.critical
                      << ", attained alpha " << rule.attained_alpha << "\n";
        } else if (tab->parsed()) {
            StoppingRule rule = rule_from_json(slurp(rule_path));
            BoundaryTable table = tabulate(rule);
            std::cout << table_to_text(table);
            if (!out_csv.empty()) spill(out_csv, table_to_csv(table));
        } else if (oc->parsed()) {
            StoppingRule rule = rule_from_json(slurp(oc_rule));
            if (oc_tau > 0) rule.design.tau = oc_tau;
            if (oc_accrual >= 0) rule.design.accrual = oc_accrual;
            auto ps = parse_list(ps_s);
            auto pcs = parse_list(ps_compt_s);
            if (pcs.size() == 1) pcs.assign(ps.size(), pcs[0]);
            if (pcs.size() != ps.size())
                throw validation_error("--ps-compt must be a single value or match --ps");
            std::vector<OCRow> rows;
            for (size_t i = 0; i < ps.size(); ++i) {
                Scenario sc{rule.design, ps[i], pcs[i], parse_dist(dist_s), shape};
                OCRow row;
                row.type = method_label(rule.method);
                row.p = ps[i];
                row.p_compt = pcs[i];
                row.oc = simulate_oc(rule, sc, reps, seed, parse_mode(mode_s), threads);
                rows.push_back(row);
                if (!spend_out.empty() && i == 0) spill(spend_out, alpha_spend_csv(row.oc.alpha_spend));
            }
            std::string csv = oc_rows_to_csv(rows);
            if (oc_out.empty())
                std::cout << csv;
            else
                spill(oc_out, csv);
        } else if (ev->parsed()) {
            StoppingRule rule = rule_from_json(slurp(ev_rule));
            auto patients = patients_from_csv(slurp(ev_patients), rule.design);
            MonitoringResult res = monitor(patients, rule);
            std::string csv = timeline_to_csv(res);
            if (ev_out.empty())
                std::cout << csv;
            else
                spill(ev_out, csv);
            if (res.stopped)
                std::cout << "STOP at t=" << *res.stop_time << " (d1=" << res.snapshot_at_stop->d1
                          << ", ess=" << res.snapshot_at_stop->ess << ")\n";
            else
                std::cout << "NO STOP\n";
        } else if (cmp->parsed()) {
            std::vector<StoppingRule> rules;
            for (const auto& f : cmp_rules) rules.push_back(rule_from_json(slurp(f)));
            for (auto& r : rules) {
                if (cmp_tau > 0) r.design.tau = cmp_tau;
                if (cmp_accrual >= 0) r.design.accrual = cmp_accrual;
            }
            std::vector<Mode> modes(rules.size(), Mode::Tite);
            if (!cmp_modes.empty()) {
                std::istringstream in(cmp_modes);
                std::string tok;
                size_t i = 0;
                while (std::getline(in, tok, ',') && i < modes.size()) modes[i++] = parse_mode(tok);
            }
            Scenario sc{rules[0].design, cmp_p, cmp_pc, parse_dist(cmp_dist), cmp_shape};
            CompareResult res = compare(rules, modes, sc, cmp_reps, cmp_seed, cmp_threads);
            std::string csv = "rule,mode,reject_prob,e_events,e_enrolled,e_duration,tox_ratio_vs_first\n";
            for (size_t i = 0; i < rules.size(); ++i) {
                const auto& o = res.per_rule[i].oc;
                char buf[160];
                std::snprintf(buf, sizeof buf, "%s,%s,%.4f,%.4f,%.4f,%.4f,%.4f\n",
                              method_label(rules[i].method).c_str(),
                              modes[i] == Mode::Tite ? "tite" : "binary", o.reject_prob, o.e_events,
                              o.e_enrolled, o.e_duration, res.tox_ratio[i][0]);
                csv += buf;
            }
            if (cmp_out.empty())
                std::cout << csv;
            else
                spill(cmp_out, csv);
        }
    } catch (const calibration_error& e) {
        std::cerr << "calibration error: " << e.what() << "\n";
        return 3;
    } catch (const validation_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const parse_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
