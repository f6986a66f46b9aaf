#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "explora/entropy.hpp"
#include "explora/rng.hpp"

using namespace explora;

namespace {

std::vector<Point> uniform_points(int n, int d, Rng& rng) {
  std::vector<Point> pts(n, Point(d));
  for (auto& p : pts)
    for (double& v : p) v = rng.uniform();
  return pts;
}

std::vector<Point> gaussian_points(int n, int d, Rng& rng) {
  std::vector<Point> pts(n, Point(d));
  for (auto& p : pts)
    for (double& v : p) v = rng.normal();
  return pts;
}

constexpr double kLogTwoPiE = 2.8378770664093455;

}  // namespace

TEST_SUITE("metrics_entropy") {

TEST_CASE("k schedule follows the log of the trace length") {
  CHECK(oe_k_schedule(3) == 1);
  CHECK(oe_k_schedule(20) == 3);
  CHECK(oe_k_schedule(200) == 5);
  CHECK(oe_k_schedule(1000) == 7);
  CHECK(oe_k_schedule(2000) == 8);
}

TEST_CASE("input validation") {
  Rng rng(1);
  CHECK_THROWS_AS(oe(uniform_points(1, 2, rng), 1), InputError);
  CHECK_THROWS_AS(oe(uniform_points(10, 2, rng), 0), InputError);
  CHECK_THROWS_AS(oe(uniform_points(10, 2, rng), 10), InputError);
  CHECK_THROWS_AS(oe(uniform_points(4, 51, rng), 1), UnsupportedError);
  CHECK_THROWS_AS(oe_series(uniform_points(2, 3, rng)), InputError);
}

TEST_CASE("uniform cube in two dimensions has near-zero entropy") {
  Rng rng(1);
  std::vector<Point> pts = uniform_points(2000, 2, rng);
  double v = oe(pts, oe_k_schedule(2000));
  CHECK(std::abs(v) <= 0.1);
}

TEST_CASE("standard gaussian entropy in two dimensions") {
  Rng rng(7);
  std::vector<Point> pts = gaussian_points(2000, 2, rng);
  double v = oe(pts, oe_k_schedule(2000));
  CHECK(std::abs(v - kLogTwoPiE) <= 0.15);
}

TEST_CASE("collapsed traces score far below any spread-out trace") {
  std::vector<Point> pts(50, Point{0.3, 0.7});
  double collapsed = oe(pts, 1);
  CHECK(collapsed < -30.0);
  Rng rng(3);
  double spread = oe(uniform_points(50, 2, rng), 1);
  CHECK(collapsed < spread - 20.0);
}

TEST_CASE("duplicates score below novel far points") {
  Rng rng(17);
  std::vector<Point> base = uniform_points(30, 3, rng);
  std::vector<Point> with_dup = base;
  with_dup.push_back(base.back());
  std::vector<Point> with_far = base;
  with_far.push_back({0.999, 0.001, 0.999});
  for (int k : {1, 3}) CHECK(oe(with_dup, k) < oe(with_far, k));
  CHECK(oe(with_dup, 1) < oe(base, 1) - 1.0);
}

TEST_CASE("value is invariant under reordering") {
  Rng rng(23);
  std::vector<Point> pts = uniform_points(40, 4, rng);
  double ref = oe(pts, 3);
  std::vector<Point> shuffled = pts;
  for (int rep = 0; rep < 5; ++rep) {
    for (std::size_t i = shuffled.size() - 1; i > 0; --i)
      std::swap(shuffled[i], shuffled[rng.uniform_int(0, static_cast<int>(i))]);
    CHECK(oe(shuffled, 3) == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("value is invariant under translation") {
  Rng rng(29);
  std::vector<Point> pts = uniform_points(60, 3, rng);
  double ref = oe(pts, 4);
  std::vector<Point> moved = pts;
  for (auto& p : moved) {
    p[0] += 2.5;
    p[1] -= 1.25;
    p[2] += 0.125;
  }
  CHECK(oe(moved, 4) == doctest::Approx(ref).epsilon(1e-9));
}

TEST_CASE("scaling shifts the value by d log s") {
  Rng rng(31);
  std::vector<Point> pts = uniform_points(60, 3, rng);
  double ref = oe(pts, 4);
  for (double s : {0.5, 2.0, 7.25}) {
    std::vector<Point> scaled = pts;
    for (auto& p : scaled)
      for (double& v : p) v *= s;
    CHECK(oe(scaled, 4) == doctest::Approx(ref + 3.0 * std::log(s)).epsilon(1e-9));
  }
}

TEST_CASE("series matches direct recomputation at every prefix") {
  Rng rng(37);
  std::vector<Point> pts = uniform_points(40, 3, rng);
  MetricSeries s = oe_series(pts);
  REQUIRE(s.t0 == 3);
  REQUIRE(s.values.size() == 38);
  for (int t = 3; t <= 40; ++t) {
    std::vector<Point> prefix(pts.begin(), pts.begin() + t);
    double direct = oe(prefix, oe_k_schedule(t));
    CHECK(s.at_t(t) == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("uniform six-dimensional traces carry the small-sample bias") {
  // k-NN estimates in d=6 at t=200 sit roughly one nat above truth.
  Rng rng(41);
  std::vector<Point> pts = uniform_points(200, 6, rng);
  double v = oe_series(pts).back();
  CHECK(v > 0.4);
  CHECK(v < 1.8);
}

}  // TEST_SUITE
