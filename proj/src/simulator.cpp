#include "titesafe/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "titesafe/boundaries.hpp"
#include "titesafe/calibration.hpp"
#include "titesafe/numerics.hpp"

namespace titesafe {

void validate_scenario(const Scenario& sc) {
    if (sc.p_true < 0.0 || sc.p_compete < 0.0 || sc.p_true + sc.p_compete > 1.0)
        throw validation_error("scenario: require p_true, p_compete >= 0 and p_true + p_compete <= 1");
    if (sc.event_dist == EventDist::Weibull && !(sc.shape > 0.0))
        throw validation_error("scenario: Weibull shape must be positive");
}

namespace {

// cause-1 time sampler: inverse CDF of the family conditioned to F1(tau) = p
double draw_event_time(const Scenario& sc, double u) {
    double tau = sc.design.tau, p = sc.p_true;
    if (sc.event_dist == EventDist::Uniform) return u * tau;
    double shape = sc.event_dist == EventDist::Exponential ? 1.0 : sc.shape;
    double scale = tau / std::pow(-std::log1p(-p), 1.0 / shape);
    return scale * std::pow(-std::log1p(-u * p), 1.0 / shape);
}

// O(1) rejection test, mirroring boundary_value/monitor semantics; the Bayes
// branch evaluates the tail with the exact same expression as bayes_boundary so
// knife-edge calibration ties resolve identically everywhere
struct Rejector {
    const StoppingRule* rule;
    const Bayes* bayes = nullptr;
    double p1 = 0.0;

    explicit Rejector(const StoppingRule& r) : rule(&r) {
        if (auto* b = std::get_if<Bayes>(&r.method))
            bayes = b;
        else if (auto* s = std::get_if<Sprt>(&r.method))
            p1 = s->p1;
    }

    bool operator()(int d1, double ess) const {
        if (d1 < 1) return false;
        if (bayes)
            return bayes_posterior_tail(d1, ess, bayes->k, bayes->m, rule->design.p0) >=
                   rule->critical;
        if (auto* wt = std::get_if<WangTsiatis>(&rule->method))
            return d1 >= wt_boundary(ess, rule->design, wt->delta, rule->critical) - 1e-9;
        return d1 >= sprt_boundary(ess, rule->design.p0, p1, rule->critical) - 1e-9;
    }
};

struct RepStat {
    bool rejected = false;
    double events = 0.0, enrolled = 0.0, duration = 0.0, info_frac = 0.0;
};

struct Trial {
    std::vector<double> enroll, etime;  // etime valid when cause != 0
    std::vector<int> cause;
};

Trial gen_trial_raw(const Scenario& sc, Rng& rng) {
    int N = sc.design.n;
    Trial tr;
    tr.enroll.resize(N);
    tr.etime.resize(N);
    tr.cause.resize(N);
    for (int j = 0; j < N; ++j) {
        double e = rng.next_double() * sc.design.accrual;
        double uc = rng.next_double();
        double ut = 1.0 - rng.next_double();  // in (0,1] so event times land in (0, tau]
        tr.enroll[j] = e;
        if (uc < sc.p_true) {
            tr.cause[j] = 1;
            tr.etime[j] = draw_event_time(sc, ut);
        } else if (uc < sc.p_true + sc.p_compete) {
            tr.cause[j] = 2;
            tr.etime[j] = ut * sc.design.tau;
        } else {
            tr.cause[j] = 0;
            tr.etime[j] = 0.0;
        }
    }
    return tr;
}

RepStat run_tite(const Trial& tr, const Scenario& sc, const Rejector& rej) {
    int N = sc.design.n;
    double tau = sc.design.tau;
    std::vector<double> times;
    for (int j = 0; j < N; ++j)
        if (tr.cause[j] == 1) times.push_back(tr.enroll[j] + tr.etime[j]);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    RepStat st;
    for (double s : times) {
        int d1 = 0;
        double ess = 0.0;
        for (int j = 0; j < N; ++j) {
            if (tr.enroll[j] > s) continue;
            double follow = std::min(tau, s - tr.enroll[j]);
            // calendar-space comparison, matching snapshot() exactly
            if (tr.cause[j] != 0 && tr.enroll[j] + tr.etime[j] <= s) {
                ess += 1.0;
                if (tr.cause[j] == 1) ++d1;
            } else {
                ess += follow / tau;  // follow >= 0 here
            }
        }
        if (rej(d1, ess)) {
            st.rejected = true;
            st.duration = s;
            st.info_frac = ess / N;
            // toxicity count: cause-1 events observed by the stop time
            for (int j = 0; j < N; ++j) {
                if (tr.enroll[j] < s) st.enrolled += 1.0;
                if (tr.cause[j] == 1 && tr.enroll[j] + tr.etime[j] <= s) st.events += 1.0;
            }
            return st;
        }
    }
    st.duration = sc.design.accrual + tau;
    st.enrolled = N;
    for (int j = 0; j < N; ++j)
        if (tr.cause[j] == 1) st.events += 1.0;
    return st;
}

RepStat run_binary(const Trial& tr, const Scenario& sc, const IntegerBoundary& bdry) {
    int N = sc.design.n;
    double tau = sc.design.tau;
    std::vector<int> order(N);
    for (int j = 0; j < N; ++j) order[j] = j;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return tr.enroll[a] < tr.enroll[b]; });

    RepStat st;
    int d = 0;
    for (int i = 0; i < N; ++i) {
        int j = order[i];
        if (tr.cause[j] == 1) ++d;
        int n = i + 1;
        auto rn = bdry.thresholds[n - 1];
        if (rn && d >= *rn) {
            double s = tr.enroll[j] + tau;  // completion time of the n-th evaluated patient
            st.rejected = true;
            st.duration = s;
            st.info_frac = static_cast<double>(n) / N;
            // binary data: every enrolled patient's toxicity status is eventually
            // ascertained, so pipeline patients' events count
            for (int jj = 0; jj < N; ++jj)
                if (tr.enroll[jj] < s) {
                    st.enrolled += 1.0;
                    if (tr.cause[jj] == 1) st.events += 1.0;
                }
            return st;
        }
    }
    st.duration = sc.design.accrual + tau;
    st.enrolled = N;
    for (int j = 0; j < N; ++j)
        if (tr.cause[j] == 1) st.events += 1.0;
    return st;
}

}  // namespace

std::vector<PatientRecord> gen_trial(const Scenario& sc, Rng& rng) {
    validate_scenario(sc);
    Trial tr = gen_trial_raw(sc, rng);
    std::vector<PatientRecord> out(tr.enroll.size());
    for (size_t j = 0; j < tr.enroll.size(); ++j) {
        out[j].enroll_time = tr.enroll[j];
        out[j].cause = tr.cause[j];
        if (tr.cause[j] != 0) out[j].event_time = tr.etime[j];
    }
    return out;
}

OCResult simulate_oc(const StoppingRule& rule, const Scenario& sc, int reps, uint64_t master_seed,
                     Mode mode, int threads) {
    validate(rule.design, rule.method);
    validate_scenario(sc);
    if (reps < 1) throw validation_error("simulate_oc: reps must be >= 1");

    Rejector rej(rule);
    IntegerBoundary bdry;
    if (mode == Mode::Binary) bdry = integer_thresholds(rule.method, rule.design, rule.critical);

    std::vector<RepStat> stats(reps);
    auto worker = [&](int begin, int end) {
        for (int r = begin; r < end; ++r) {
            Rng rng = Rng::stream(master_seed, static_cast<uint64_t>(r));
            Trial tr = gen_trial_raw(sc, rng);
            stats[r] = mode == Mode::Tite ? run_tite(tr, sc, rej) : run_binary(tr, sc, bdry);
        }
    };
    int nthreads = std::max(1, threads);
    if (nthreads == 1) {
        worker(0, reps);
    } else {
        std::vector<std::thread> pool;
        int chunk = (reps + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
            int begin = t * chunk, end = std::min(reps, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(worker, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    // deterministic reduction in replication order
    OCResult oc;
    double se[3] = {0, 0, 0};
    double sums[3] = {0, 0, 0};
    int nrej = 0;
    for (const auto& st : stats) {
        if (st.rejected) ++nrej;
        double v[3] = {st.events, st.enrolled, st.duration};
        for (int i = 0; i < 3; ++i) {
            sums[i] += v[i];
            se[i] += v[i] * v[i];
        }
    }
    double R = reps;
    oc.reject_prob = nrej / R;
    oc.se_reject = std::sqrt(oc.reject_prob * (1.0 - oc.reject_prob) / R);
    double* means[3] = {&oc.e_events, &oc.e_enrolled, &oc.e_duration};
    double* ses[3] = {&oc.se_events, &oc.se_enrolled, &oc.se_duration};
    for (int i = 0; i < 3; ++i) {
        double mean = sums[i] / R;
        *means[i] = mean;
        double var = std::max(0.0, se[i] / R - mean * mean);
        *ses[i] = std::sqrt(var / R);
    }
    oc.alpha_spend.resize(20);
    for (int g = 1; g <= 20; ++g) {
        double frac = g / 20.0;
        int count = 0;
        for (const auto& st : stats)
            if (st.rejected && st.info_frac <= frac + 1e-9) ++count;
        oc.alpha_spend[g - 1] = {frac, count / R};
    }
    return oc;
}

CompareResult compare(const std::vector<StoppingRule>& rules, const std::vector<Mode>& modes,
                      const Scenario& sc, int reps, uint64_t master_seed, int threads) {
    if (rules.empty() || rules.size() != modes.size())
        throw validation_error("compare: need matching rule/mode lists");
    for (const auto& r : rules) {
        if (r.design.n != rules[0].design.n || r.design.p0 != rules[0].design.p0 ||
            r.design.tau != rules[0].design.tau)
            throw validation_error("compare: rules must share one trial design");
    }
    CompareResult out;
    for (size_t i = 0; i < rules.size(); ++i) {
        Scenario s = sc;
        s.design = rules[i].design;
        out.per_rule.push_back({simulate_oc(rules[i], s, reps, master_seed, modes[i], threads),
                                modes[i]});
    }
    size_t k = rules.size();
    out.tox_ratio.assign(k, std::vector<double>(k, 1.0));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j)
            out.tox_ratio[i][j] = out.per_rule[i].oc.e_events / out.per_rule[j].oc.e_events;
    return out;
}

std::vector<std::pair<double, double>> alpha_spend_curve(const StoppingRule& rule,
                                                         const Scenario& sc, int reps,
                                                         uint64_t master_seed, int threads) {
    if (std::fabs(sc.p_true - rule.design.p0) > 1e-12)
        throw validation_error("alpha_spend_curve: scenario must have p_true = p0");
    return simulate_oc(rule, sc, reps, master_seed, Mode::Tite, threads).alpha_spend;
}

}  // namespace titesafe
