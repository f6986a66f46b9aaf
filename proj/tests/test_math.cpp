#include <cmath>
#include <vector>

#include "doctest.h"
#include "explora/normal.hpp"
#include "explora/quasirandom.hpp"
#include "explora/rng.hpp"
#include "explora/special.hpp"

using namespace explora;

TEST_SUITE("math") {

TEST_CASE("digamma matches high-precision references") {
  // reference values computed with 50-digit arithmetic
  CHECK(digamma(1.0) == doctest::Approx(-0.57721566490153286061).epsilon(1e-12));
  CHECK(digamma(2.0) == doctest::Approx(0.42278433509846714).epsilon(1e-12));
  CHECK(digamma(3.0) == doctest::Approx(0.92278433509846714).epsilon(1e-12));
  CHECK(digamma(8.0) == doctest::Approx(2.0156414779556100).epsilon(1e-12));
  CHECK(digamma(10.0) == doctest::Approx(2.2517525890667211).epsilon(1e-12));
  CHECK(digamma(100.0) == doctest::Approx(4.6001618527380874).epsilon(1e-12));
  CHECK(digamma(200.0) == doctest::Approx(5.2958152832199116).epsilon(1e-12));
  CHECK(digamma(2000.0) == doctest::Approx(7.6006524387087495).epsilon(1e-12));
  CHECK(digamma(1.5) == doctest::Approx(0.036489973978576521).epsilon(1e-10));
  CHECK(digamma(4.7) == doctest::Approx(1.4374238096317817).epsilon(1e-10));
  CHECK(digamma(0.5) == doctest::Approx(-1.9635100260214235).epsilon(1e-10));
}

TEST_CASE("digamma recurrence psi(x+1) = psi(x) + 1/x") {
  for (double x : {0.3, 0.9, 1.7, 3.2, 5.5, 11.0, 47.3}) {
    CHECK(digamma(x + 1.0) == doctest::Approx(digamma(x) + 1.0 / x).epsilon(1e-11));
  }
  CHECK_THROWS_AS(digamma(0.0), InputError);
  CHECK_THROWS_AS(digamma(-3.0), InputError);
}

TEST_CASE("log unit ball volume") {
  CHECK(log_unit_ball_volume(1) == doctest::Approx(0.69314718055994531).epsilon(1e-13));
  CHECK(log_unit_ball_volume(2) == doctest::Approx(1.1447298858494002).epsilon(1e-13));
  CHECK(log_unit_ball_volume(3) == doctest::Approx(1.4324119583011811).epsilon(1e-13));
  CHECK(log_unit_ball_volume(6) == doctest::Approx(1.6424301883201455).epsilon(1e-13));
  CHECK(log_unit_ball_volume(10) == doctest::Approx(0.93615768646495488).epsilon(1e-13));
  CHECK(log_unit_ball_volume(20) == doctest::Approx(-3.6571137145815136).epsilon(1e-13));
  CHECK_THROWS_AS(log_unit_ball_volume(0), InputError);
}

TEST_CASE("normal pdf and cdf") {
  CHECK(normal_pdf(0.0) == doctest::Approx(0.39894228040143268).epsilon(1e-14));
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(normal_cdf(1.6449) == doctest::Approx(0.9500047825).epsilon(1e-9));
  CHECK(normal_cdf(-1.0) + normal_cdf(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(normal_cdf(8.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("normal quantile inverts the cdf") {
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-10));
  CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-12));
  // beyond |z| ~ 5 the tail mass is too close to 1 for a double p to carry
  // enough precision for a 1e-9 round trip
  for (double z : {-5.0, -2.3, -0.7, 0.0, 0.4, 1.1, 3.9, 4.8}) {
    CHECK(normal_quantile(normal_cdf(z)) == doctest::Approx(z).epsilon(1e-9));
  }
  CHECK_THROWS_AS(normal_quantile(-0.1), InputError);
  CHECK_THROWS_AS(normal_quantile(1.5), InputError);
}

TEST_CASE("rng determinism and stream independence") {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 32; ++i) CHECK(a.next_u64() == b.next_u64());
  bool differs = false;
  Rng a2(42);
  for (int i = 0; i < 32; ++i) differs |= (a2.next_u64() != c.next_u64());
  CHECK(differs);
  Rng parent(7);
  Rng c1 = parent.child(1), c2 = parent.child(2);
  CHECK(c1.next_u64() != c2.next_u64());
  CHECK(parent.child(1).next_u64() == parent.child(1).next_u64());
}

TEST_CASE("rng uniform and normal moments") {
  Rng rng(123);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
    sum2 += u * u;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(sum2 / n - (sum / n) * (sum / n) == doctest::Approx(1.0 / 12.0).epsilon(0.02));

  double ns = 0.0, ns2 = 0.0;
  for (int i = 0; i < n; ++i) {
    double g = rng.normal();
    ns += g;
    ns2 += g * g;
  }
  CHECK(ns / n == doctest::Approx(0.0).epsilon(0.02));
  CHECK(std::abs(ns / n) < 0.02);
  CHECK(ns2 / n == doctest::Approx(1.0).epsilon(0.02));

  double cs = 0.0;
  for (int i = 0; i < 20000; ++i) cs += rng.chi_squared(5);
  CHECK(cs / 20000 == doctest::Approx(5.0).epsilon(0.03));
}

TEST_CASE("truncated normal stays inside the interval") {
  Rng rng(9);
  for (int i = 0; i < 5000; ++i) {
    double x = truncated_normal(rng, 0.9, 0.2, 0.0, 1.0);
    CHECK(x >= 0.0);
    CHECK(x <= 1.0);
  }
  double sum = 0.0;
  const int n = 50000;
  for (int i = 0; i < n; ++i) sum += truncated_normal(rng, 0.5, 0.2, 0.0, 1.0);
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("quasirandom sequence covers the cube deterministically") {
  QuasiRandom qr(3, 11), qr2(3, 11), qr3(3, 12);
  std::vector<Point> a = qr.take(500), b = qr2.take(500), c = qr3.take(500);
  CHECK(a == b);
  CHECK(a != c);
  double mean[3] = {0, 0, 0};
  for (const Point& p : a) {
    for (int j = 0; j < 3; ++j) {
      CHECK(p[j] >= 0.0);
      CHECK(p[j] < 1.0);
      mean[j] += p[j];
    }
  }
  for (int j = 0; j < 3; ++j) CHECK(mean[j] / 500 == doctest::Approx(0.5).epsilon(0.05));
  CHECK_THROWS_AS(QuasiRandom(0, 1), InputError);
}

TEST_CASE("string hashing is stable") {
  CHECK(hash_str("abc") == hash_str("abc"));
  CHECK(hash_str("abc") != hash_str("abd"));
  CHECK(hash_mix(1, 2) != hash_mix(2, 1));
}

}  // TEST_SUITE
