#include <cmath>
#include <vector>

#include <doctest.h>

#include "metrodose/objective.hpp"
#include "support/oracles.hpp"

using namespace metrodose;

namespace {
DrugPK tmz_pk() { return DrugPK(9.242, 4e-3, 60.0, 0.36); }
TumorModel tmz_tumor() { return TumorModel(5.51e-3, 0.25); }

std::vector<double> pattern_5_28(int n) {
    std::vector<double> t;
    for (int i = 0; i < n; ++i) t.push_back(28.0 * (i / 5) + i % 5);
    return t;
}
}  // namespace

TEST_CASE("log f1 equals the scaled cumulative effect") {
    DrugPK pk = tmz_pk();
    std::vector<double> times = pattern_5_28(10);
    std::vector<double> doses(10, 150.0);
    DoseSchedule sched(times, doses, 210.0);
    CHECK(log_f1(pk, times, 210.0, doses) ==
          doctest::Approx((pk.lambda / pk.k1) * cumulative_effect(pk, sched, 210.0))
              .epsilon(1e-13));
}

TEST_CASE("time-free approximation is close to the exact objective") {
    DrugPK pk = tmz_pk();
    std::vector<double> times = pattern_5_28(40);
    std::vector<double> doses(40, 143.75);
    const double exact = log_f1(pk, times, 210.0, doses);
    const double hat = log_f1_hat(pk.k2_tilde(), doses);
    CHECK(hat == doctest::Approx(40.0 * std::log(143.75 / 90.0 + 1.0)).epsilon(1e-14));
    // The separation gap stays beneath the diagnostic ratio per dose.
    CHECK(std::abs(exact - hat) / hat < 2e-4);
    CHECK(exact < hat);  // residual drug from earlier doses shrinks each log term's increment
}

TEST_CASE("hypothesis diagnostic reproduces the benchmark figures") {
    DrugPK pk = tmz_pk();
    DoseSchedule sched({0.0, 1.0, 2.0}, {200.0, 200.0, 200.0}, 210.0);
    HypothesisDiagnostic d = check_main_hypothesis(pk, sched, 200.0);
    CHECK(d.lhs == doctest::Approx(200.0 * std::exp(-9.242)).epsilon(1e-14));
    CHECK(d.lhs == doctest::Approx(0.019377).epsilon(1e-4));
    CHECK(d.k2_tilde == 90.0);
    CHECK(d.ratio == doctest::Approx(d.lhs / 90.0));
    CHECK(d.ratio < kHypothesisRatioWarn);

    DrugPK slow(0.1, 4e-3, 60.0, 0.36);
    HypothesisDiagnostic w = check_main_hypothesis(slow, sched, 200.0);
    CHECK(w.ratio > kHypothesisRatioWarn);
}

TEST_CASE("rest time and scaled threshold") {
    TumorModel tm = tmz_tumor();
    DrugPK pk = tmz_pk();
    const double tr = rest_time(tm, 0.1813);
    CHECK(tr == doctest::Approx(37.83228340672606).epsilon(1e-12));
    CHECK(t_r_tilde(pk, 210.0, tr) ==
          doctest::Approx((pk.lambda / pk.k1) * (210.0 + tr)).epsilon(1e-13));
    CHECK(t_r_tilde(pk, 210.0, tr) == doctest::Approx(38.17443272074937).epsilon(1e-12));

    // Threshold above the initial size: the tumor may even grow, T_R < 0.
    CHECK(rest_time(tm, 0.30) < 0.0);
    CHECK(rest_time(tm, tm.l0_rel) == doctest::Approx(0.0));
    CHECK_THROWS_AS(rest_time(tm, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(rest_time(tm, 1.0), std::invalid_argument);
}

TEST_CASE("palliative target ties the three threshold forms together") {
    TumorModel tm = tmz_tumor();
    DrugPK pk = tmz_pk();
    PalliativeTarget target = make_palliative_target(tm, pk, 210.0, 0.1813);
    CHECK(target.l_star_rel == doctest::Approx(0.1813));
    CHECK(target.t_r == doctest::Approx(rest_time(tm, 0.1813)));
    CHECK(target.t_r_tilde == doctest::Approx(t_r_tilde(pk, 210.0, target.t_r)));
}

TEST_CASE("feasibility slack changes sign exactly at the threshold") {
    TumorModel tm = tmz_tumor();
    DrugPK pk = tmz_pk();
    PalliativeTarget target = make_palliative_target(tm, pk, 210.0, 0.1813);

    std::vector<double> times = pattern_5_28(40);
    DoseSchedule strong(times, std::vector<double>(40, 160.0), 210.0);
    DoseSchedule weak(times, std::vector<double>(40, 120.0), 210.0);
    PalliativeFeasibility fs = palliative_feasible(pk, strong, target);
    PalliativeFeasibility fw = palliative_feasible(pk, weak, target);
    CHECK(fs.feasible);
    CHECK(fs.slack > 0.0);
    CHECK(!fw.feasible);
    CHECK(fw.slack < 0.0);
    // A feasible schedule ends at or below the target size.
    CHECK(tumor_ratio(tm, pk, strong, 210.0) <= target.l_star_rel);
    CHECK(tumor_ratio(tm, pk, weak, 210.0) > target.l_star_rel);
}

TEST_CASE("objective validates its schedule arguments") {
    DrugPK pk = tmz_pk();
    CHECK_THROWS_AS(log_f1(pk, {0.0, 1.0}, 10.0, {100.0}), std::invalid_argument);
    CHECK_THROWS_AS(log_f1(pk, {0.0, 1.0}, 10.0, {100.0, -5.0}), std::invalid_argument);
    CHECK_THROWS_AS(log_f1_hat(90.0, {100.0, -5.0}), std::invalid_argument);
    CHECK_THROWS_AS(DoseBounds(100.0, 50.0), std::invalid_argument);
    CHECK_THROWS_AS(DoseBounds(0.0, 50.0), std::invalid_argument);
}
