#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "titesafe/boundaries.hpp"
#include "titesafe/calibration.hpp"
#include "titesafe/engine.hpp"
#include "titesafe/io.hpp"
#include "titesafe/numerics.hpp"

using namespace titesafe;

TEST_CASE("weight is follow-up over tau, clamped") {
    CHECK(weight(0.0, 10.0) == 0.0);
    CHECK(weight(2.5, 10.0) == 0.25);
    CHECK(weight(10.0, 10.0) == 1.0);
    CHECK(weight(25.0, 10.0) == 1.0);
    CHECK(weight(-3.0, 10.0) == 0.0);
    CHECK_THROWS_AS(weight(1.0, 0.0), domain_error);
}

TEST_CASE("snapshot hand-computed example") {
    TrialDesign design{10, 0.2, 10.0, 0.05, 100.0};
    std::vector<PatientRecord> pts = {
        {0.0, 4.0, 1},          // event by s=6
        {2.0, std::nullopt, 0}, // 4 days of follow-up -> weight 0.4
        {5.0, 0.5, 2},          // competing event inside the 1-day window
        {6.0, 3.0, 1},          // enrolled exactly at s, event pending, zero weight
        {8.0, std::nullopt, 0}, // not yet enrolled
    };
    Snapshot snap = snapshot(pts, 6.0, design);
    CHECK(snap.n_enrolled == 4);
    CHECK(snap.d1 == 1);
    CHECK(snap.d2 == 1);
    CHECK(snap.ess == doctest::Approx(2.4).epsilon(1e-12));

    // after everyone completes the window the ESS is the enrolled count
    snap = snapshot(pts, 100.0, design);
    CHECK(snap.n_enrolled == 5);
    CHECK(snap.ess == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(snap.d1 == 2);
}

TEST_CASE("snapshot caps follow-up at tau") {
    TrialDesign design{5, 0.2, 10.0, 0.05, 100.0};
    std::vector<PatientRecord> pts = {{0.0, std::nullopt, 0}};
    Snapshot snap = snapshot(pts, 50.0, design);
    CHECK(snap.ess == doctest::Approx(1.0));
    // an event at tau still counts once follow-up reaches tau
    pts[0] = {0.0, 10.0, 1};
    snap = snapshot(pts, 10.0, design);
    CHECK(snap.d1 == 1);
    snap = snapshot(pts, 9.99, design);
    CHECK(snap.d1 == 0);  // not yet observed
    CHECK(snap.ess == doctest::Approx(0.999));
}

TEST_CASE("monitor stops at the first triggering cause-1 event") {
    TrialDesign design{8, 0.2, 10.0, 0.05, 50.0};
    StoppingRule rule = calibrate(WangTsiatis{0.5}, design);

    // a cluster of early events should trip any sane rule
    std::vector<PatientRecord> pts = {
        {0.0, 1.0, 1}, {0.5, 1.0, 1}, {1.0, 1.0, 1}, {1.5, 1.0, 1},
        {2.0, 1.0, 1}, {30.0, std::nullopt, 0},
    };
    MonitoringResult res = monitor(pts, rule);
    REQUIRE(res.stopped);
    CHECK(res.snapshot_at_stop->d1 >= 1);
    // the timeline ends at the stop, and only the last entry triggers
    REQUIRE(!res.timeline.empty());
    for (size_t i = 0; i + 1 < res.timeline.size(); ++i) CHECK(!res.timeline[i].triggered);
    CHECK(res.timeline.back().triggered);
    CHECK(*res.stop_time == res.timeline.back().time);

    // with no cause-1 events there is nothing to evaluate
    std::vector<PatientRecord> quiet = {{0.0, std::nullopt, 0}, {1.0, 4.0, 2}};
    res = monitor(quiet, rule);
    CHECK(!res.stopped);
    CHECK(res.timeline.empty());
}

TEST_CASE("simultaneous cause-1 events are evaluated jointly") {
    TrialDesign design{6, 0.2, 10.0, 0.05, 50.0};
    StoppingRule rule = calibrate(WangTsiatis{0.5}, design);
    std::vector<PatientRecord> pts = {
        {0.0, 5.0, 1}, {2.0, 3.0, 1},  // both events land at calendar time 5
        {4.0, std::nullopt, 0},
    };
    MonitoringResult res = monitor(pts, rule);
    REQUIRE(res.timeline.size() == 1);
    CHECK(res.timeline[0].time == 5.0);
    CHECK(res.timeline[0].snap.d1 == 2);
}

TEST_CASE("timeline CSV format") {
    TrialDesign design{6, 0.2, 10.0, 0.05, 50.0};
    StoppingRule rule = calibrate(WangTsiatis{0.5}, design);
    std::vector<PatientRecord> pts = {{0.0, 5.0, 1}, {2.0, std::nullopt, 0}};
    MonitoringResult res = monitor(pts, rule);
    std::string csv = timeline_to_csv(res);
    CHECK(csv.rfind("time,d1,d2,ess,boundary,triggered\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + (long)res.timeline.size());
}

TEST_CASE("GVHD case study replay: spread-out events never trip the rules") {
    // 29 evaluable patients accrued over ~4 years, 5 toxicities and 3 competing
    // events within the 100-day window -- none of the candidate rules should stop
    TrialDesign design{30, 0.15, 1460.0, 0.05, 100.0};
    std::vector<PatientRecord> pts;
    for (int j = 0; j < 29; ++j) pts.push_back({48.0 * j, std::nullopt, 0});
    pts[2] = {96.0, 35.0, 1};
    pts[8] = {384.0, 60.0, 1};
    pts[14] = {672.0, 80.0, 1};
    pts[20] = {960.0, 40.0, 1};
    pts[26] = {1248.0, 70.0, 1};
    pts[5] = {240.0, 50.0, 2};
    pts[12] = {576.0, 30.0, 2};
    pts[22] = {1056.0, 90.0, 2};

    StoppingRule obf = calibrate(WangTsiatis{0.0}, design);
    StoppingRule bayes = calibrate(Bayes{1.125, 6.375}, design);
    StoppingRule sprt = calibrate(Sprt{0.43, sprt_theta(0.15, 0.43)}, design);
    for (const auto& rule : {obf, bayes, sprt}) {
        MonitoringResult res = monitor(pts, rule);
        CHECK(!res.stopped);
        REQUIRE(res.timeline.size() == 5);  // one look per distinct toxicity time
        CHECK(res.timeline.back().snap.d1 == 5);
        CHECK(res.timeline.back().snap.d2 == 3);
    }
}

TEST_CASE("event-time monitoring is sufficient on a dense grid (smoke)") {
    TrialDesign design{6, 0.25, 10.0, 0.05, 20.0};
    StoppingRule rule = calibrate(WangTsiatis{0.0}, design);
    std::vector<PatientRecord> pts = {
        {0.0, 2.0, 1}, {1.0, 4.0, 1}, {3.0, 1.5, 1}, {5.0, std::nullopt, 0},
        {6.0, 8.0, 2}, {7.0, 2.5, 1},
    };
    MonitoringResult res = monitor(pts, rule);

    bool grid_stopped = false;
    double grid_time = 0.0;
    double h = 0.005;
    for (double s = 0.0; s <= design.accrual + design.tau; s += h) {
        Snapshot snap = snapshot(pts, s, design);
        if (snap.d1 >= 1 && snap.d1 >= boundary_value(rule, snap.ess) - 1e-9) {
            grid_stopped = true;
            grid_time = s;
            break;
        }
    }
    CHECK(grid_stopped == res.stopped);
    if (res.stopped) CHECK(std::fabs(grid_time - *res.stop_time) <= h + 1e-12);
}
