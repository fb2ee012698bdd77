#include <doctest.h>

#include <vector>

#include "borescan/error.hpp"
#include "borescan/report.hpp"

using namespace borescan;
using doctest::Approx;

namespace {

DefectRecord rec(int id, FeatureKind kind, double z, double beta, double size) {
  DefectRecord r;
  r.id = id;
  r.kind = kind;
  r.z_mm = z;
  r.z_bottom_mm = 10.0 - z;
  r.beta_deg = beta;
  r.size_mm = size;
  r.pixel_area = 1000;
  r.physical_area_mm2 = 0.0046656;
  r.box = {z - 0.1, z + 0.1, beta - 1, beta + 1};
  r.sources = {{{1, 2}, 10.5, 20.25}};
  if (kind == FeatureKind::line_like) r.segment_widths_mm = {0.3, 0.31};
  return r;
}

DefectSpec disc(double z, double beta, double d, std::string group = {}) {
  DefectSpec s;
  s.z_mm = z;
  s.beta_deg = beta;
  s.size_mm = d;
  s.group = std::move(group);
  return s;
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("sample standard deviation") {
  const std::vector<double> v{0.1, 0.2, 0.3, 0.4};
  CHECK(sample_stddev(v) == Approx(0.12909944487358055));
  CHECK(sample_stddev(std::vector<double>{1.0}) == 0.0);
}

TEST_CASE("summary and truth block") {
  const HoleSpec hole{2.0, 10.0};
  std::vector<DefectRecord> rs{rec(1, FeatureKind::disc_like, 5.0, 10.0, 0.101),
                               rec(2, FeatureKind::disc_like, 6.0, 10.0, 0.199),
                               rec(3, FeatureKind::line_like, 3.0, 90.0, 0.305)};
  const std::vector<DefectSpec> truth{disc(5.001, 10.01, 0.1), disc(8.0, 200.0, 0.2)};
  const DefectReport r = build_report(rs, hole, truth);
  REQUIRE(r.summary.size() == 2);
  CHECK(r.summary[0].count == 2);
  CHECK(r.summary[0].mean_size_mm == Approx(0.15));
  CHECK(r.summary[0].std_size_mm == Approx(0.06929646455628166));
  REQUIRE(r.comparison);
  CHECK((*r.comparison)[0].record_id == 1);
  CHECK((*r.comparison)[0].position_error_mm < 0.002);
  CHECK_FALSE((*r.comparison)[1].record_id);

  CHECK(report_from_json(report_to_json(r)).records == r.records);
  const DefectReport back = report_from_json(report_to_json(r));
  CHECK(back.comparison->size() == 2);
  CHECK(back.summary[1].count == 1);

  const std::string csv = report_to_csv(r);
  CHECK(csv.find("id,kind,z_mm,beta_deg,z_bottom_mm,size_mm") == 0);
  CHECK(csv.find("1,disc,5.0000,10.0000,5.0000,0.101,") != std::string::npos);
  CHECK(csv.find("3,line,") != std::string::npos);
}

TEST_CASE("comparison across trials") {
  const HoleSpec hole{2.0, 10.0};
  const std::vector<DefectSpec> truth{disc(5.0, 10.0, 0.2, "p"), disc(5.4, 10.0, 0.2, "p")};
  std::vector<DefectReport> trials;
  for (double s : {0.198, 0.202, 0.200}) {
    trials.push_back(build_report({rec(1, FeatureKind::disc_like, 5.0, 10.0, s),
                                   rec(2, FeatureKind::disc_like, 5.401, 10.0, s)},
                                  hole, truth));
  }
  const auto rows = compare_reports(trials, truth, hole);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].feature == "disc#1");
  CHECK(rows[0].found == 3);
  CHECK(rows[0].mean_mm == Approx(0.2));
  CHECK(rows[0].std_mm == Approx(0.002));
  CHECK(rows[2].quantity == "spacing");
  CHECK(rows[2].truth_mm == Approx(0.4));
  CHECK(rows[2].mean_mm == Approx(0.401));
  CHECK(rows[2].std_mm == Approx(0.0).epsilon(1e-9));

  std::vector<DefectReport> same(2, trials[0]);
  CHECK(compare_reports(same, truth, hole)[0].std_mm == 0.0);

  CHECK_THROWS_AS(compare_reports(std::vector<DefectReport>{}, truth, hole), Error);
  CHECK(compare_to_csv(rows).find("disc#1,diameter,0.200,3,3,0.200,0.002") != std::string::npos);
}

}
