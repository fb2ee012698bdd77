#include <doctest.h>

#include <random>

#include "borescan/detect.hpp"
#include "borescan/error.hpp"
#include "borescan/synth.hpp"
#include "fixtures.hpp"
#include "flood_fill.hpp"

using namespace borescan;
using doctest::Approx;

namespace {

TileImage rendered_disc(double d_mm, double sigma, std::uint64_t seed) {
  const HoleSpec hole{2.0, 6.0};
  const EffectiveRegion region;
  const ScanPlan plan = plan_scan(hole, region);
  const CaptureEvent ev = *plan.find({2, 1});
  DefectSpec s;
  s.z_mm = hole.depth_mm - ev.z_mm + 0.0013;
  s.beta_deg = ev.theta_deg + 0.31;
  s.size_mm = d_mm;
  const auto tex = build_texture(hole, {s}, 0.7, 2.16);
  const TileImage clean = render_tile(tex, ev, OpticsConfig{}, region);
  return add_noise(clean, sigma, seed);
}

}  // namespace

TEST_SUITE("detect") {

TEST_CASE("fixed threshold") {
  TileImage flat(16, 16, 8, 2.16, 2.16);
  flat.fill(200);
  CHECK(binarize(flat, {ThresholdMethod::fixed, 0.5, Polarity::dark}).count() == 0);
  CHECK(binarize(flat, {ThresholdMethod::fixed, 0.5, Polarity::bright}).count() == 256);
}

TEST_CASE("otsu threshold") {
  TileImage img(20, 10, 8, 2.16, 2.16);
  for (int y = 0; y < 10; ++y) {
    for (int x = 0; x < 20; ++x) img.at(x, y) = x < 7 ? 50 : 200;
  }
  const double t = otsu_threshold(img);
  CHECK(t > 50.0);
  CHECK(t < 200.0);
  CHECK(binarize(img, {ThresholdMethod::otsu, 0.5, Polarity::dark}).count() == 70);

  TileImage flat(4, 4, 8, 1, 1);
  flat.fill(9);
  try {
    otsu_threshold(flat);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::degenerate_threshold);
  }
}

TEST_CASE("noisy disc foreground count") {
  const TileImage tile = rendered_disc(0.2, 5.0 / 255.0, 4);
  const double truth = kPi * 0.25 * (200.0 / 2.16) * (200.0 / 2.16);
  CHECK(binarize(tile, {}).count() == Approx(truth).epsilon(0.03));
}

TEST_CASE("components basics") {
  CHECK(connected_components(BinaryMask(8, 8)).blobs.empty());

  BinaryMask two(12, 6);
  for (int y = 1; y < 5; ++y) {
    for (int x = 1; x < 5; ++x) two.set(x, y);
    for (int x = 6; x < 10; ++x) two.set(x, y);
  }
  const Labeling lab = connected_components(two, 1);
  REQUIRE(lab.blobs.size() == 2);
  CHECK(lab.blobs[0].pixel_area == 16);
  CHECK(lab.blobs[0].cx == Approx(2.5));
  CHECK(lab.blobs[1].bbox.x0 == 6);
  CHECK(lab.blobs[0].touches_border == false);

  BinaryMask diag(4, 4);
  diag.set(0, 0);
  diag.set(1, 1);
  CHECK(connected_components(diag, 1).blobs.size() == 1);
}

TEST_CASE("components match flood fill on random masks") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const BinaryMask mask = fixtures::random_mask(32, 32, 0.1 + 0.004 * trial, rng);
    const int min_area = trial % 4 == 0 ? 3 : 1;
    const Labeling lab = connected_components(mask, min_area);
    const auto ref = oracle::flood_fill(mask, min_area);
    CHECK(oracle::same_partition(lab.labels, ref.labels));
    CHECK(lab.blobs.size() == ref.areas.size());
  }
}

TEST_CASE("blob metrics") {
  BinaryMask one(30, 30);
  one.set(10, 20);
  Labeling lab = connected_components(one, 1);
  REQUIRE(lab.blobs.size() == 1);
  const BlobRecord b = blob_metrics(lab.blobs[0], 2.16, 2.16);
  CHECK(b.cx == 10.0);
  CHECK(b.cy == 20.0);
  CHECK(b.physical_area_mm2 * 1e6 == Approx(4.6656));
}

TEST_CASE("equivalent diameters of rendered discs") {
  for (double d : {0.1, 0.2}) {
    const Labeling lab = connected_components(binarize(rendered_disc(d, 0.0, 0), {}));
    REQUIRE(lab.blobs.size() == 1);
    CHECK(blob_metrics(lab.blobs[0], 2.16, 2.16).equivalent_diameter_mm == Approx(d).epsilon(0.05));
  }
}

TEST_CASE("centroid distance") {
  BlobRecord a;
  BlobRecord b;
  CHECK(centroid_distance(a, b, 2.16, 2.16) == 0.0);
  b.cx = 185.19;
  CHECK(centroid_distance(a, b, 2.16, 2.16) == Approx(0.4000104).epsilon(1e-9));
  b.frame = {1, 0};
  CHECK_THROWS_AS(centroid_distance(a, b, 2.16, 2.16), Error);
}

TEST_CASE("line width") {
  BinaryMask band(300, 256);
  for (int y = 0; y < 256; ++y) {
    for (int x = 80; x < 219; ++x) band.set(x, y);
  }
  for (int seg : {1, 17, 64, 256}) {
    const LineMeasurement m = line_width(band, Axis::vertical, seg, 2.16);
    CHECK(m.mean_width_mm == Approx(0.30024).epsilon(1e-9));
    for (double w : m.widths_mm) CHECK(w == Approx(0.30024).epsilon(1e-9));
  }
  CHECK(line_width(band, Axis::vertical, 64, 2.16).segment_count == 4);
  CHECK_THROWS_AS(line_width(BinaryMask(10, 10), Axis::vertical, 4, 2.16), Error);
}

}
