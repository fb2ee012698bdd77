#include <doctest.h>

#include "borescan/error.hpp"
#include "borescan/scanplan.hpp"

using namespace borescan;
using doctest::Approx;

TEST_SUITE("scanplan") {

TEST_CASE("shot counts") {
  const ShotCounts c = shot_counts(HoleSpec{2.0, 47.0}, EffectiveRegion{});
  CHECK(c.n_rot == 9);
  CHECK(c.n_depth == 32);
  CHECK(shot_counts(HoleSpec{2.0, 1.0}, EffectiveRegion{}).n_depth == 1);
  CHECK(shot_counts(HoleSpec{2.0, 3.0}, EffectiveRegion{}).n_depth == 3);
  EffectiveRegion wide;
  wide.f_x_mm = 2.0 * kPi;
  try {
    shot_counts(HoleSpec{2.0, 47.0}, wide);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::degenerate_plan);
  }
}

TEST_CASE("default plan") {
  const ScanPlan plan = plan_scan(HoleSpec{}, EffectiveRegion{});
  CHECK(plan.schedule.size() == 288);
  CHECK(plan.alpha_deg == Approx(40.0));
  CHECK(plan.step_mm == Approx(1.5));
  for (std::size_t i = 1; i < plan.schedule.size(); ++i) {
    const auto& a = plan.schedule[i - 1];
    const auto& b = plan.schedule[i];
    CHECK(b.order == a.order + 1);
    CHECK((b.k > a.k || (b.k == a.k && b.j == a.j + 1)));
  }
  const auto e = plan.find({10, 3});
  REQUIRE(e);
  CHECK(e->z_mm == Approx(15.0));
  CHECK(e->theta_deg == Approx(120.0));
  CHECK_FALSE(plan.contains({32, 0}));
}

TEST_CASE("single shot plan") {
  const ScanPlan plan = plan_scan(HoleSpec{}, EffectiveRegion{}, ShotCounts{1, 1});
  REQUIRE(plan.schedule.size() == 1);
  CHECK(plan.schedule[0].z_mm == 0.0);
  CHECK(plan.schedule[0].theta_deg == 0.0);
}

TEST_CASE("capture shape") {
  const OpticsConfig cfg;
  CHECK(capture_shape(EffectiveRegion{}, cfg).width == 835);
  CHECK(capture_shape(EffectiveRegion{1.5, 1.5, 0.0}, cfg).width == 695);
  CHECK(capture_shape(EffectiveRegion{}, cfg).width % 2 == 1);
  CHECK(region_width_px(EffectiveRegion{}, cfg) == Approx(1500.0 / 2.16));
}

TEST_CASE("coverage") {
  const HoleSpec hole;
  const EffectiveRegion region;
  const ScanPlan full = plan_scan(hole, region);
  const CoverageReport ok = coverage_check(full, hole, region, 0.02);
  CHECK(ok.covered_fraction == 1.0);
  CHECK(ok.min_overlap >= 1);

  const ScanPlan sparse = plan_scan(hole, region, ShotCounts{8, 32});
  CHECK(coverage_check(sparse, hole, region, 0.02).covered_fraction < 1.0);

  ScanPlan empty = full;
  empty.schedule.clear();
  CHECK(coverage_check(empty, hole, region, 0.02).covered_fraction == 0.0);
}

}
