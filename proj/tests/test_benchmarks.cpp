#include <doctest.h>

#include <cmath>
#include <vector>

#include "explora/benchmarks.hpp"
#include "explora/rng.hpp"

using namespace explora;

TEST_SUITE("benchmarks") {

TEST_CASE("registry contents") {
  auto names = benchmark_names();
  REQUIRE(names.size() == 4);
  CHECK(make_benchmark("branin2").dim == 2);
  CHECK(make_benchmark("levy4").dim == 4);
  CHECK(make_benchmark("hartmann6").dim == 6);
  CHECK(make_benchmark("griewank8").dim == 8);
  CHECK_THROWS_AS(make_benchmark("rosenbrock2"), InputError);
}

TEST_CASE("branin minimizers") {
  const double pi = 3.14159265358979323846;
  Benchmark b = make_benchmark("branin2");
  for (Point native : {Point{-pi, 12.275}, Point{pi, 2.275}, Point{9.42478, 2.475}}) {
    double v = b.evaluate(b.to_unit(native));
    CHECK(v == doctest::Approx(-0.39788735772973834).epsilon(1e-5));
  }
  CHECK(b.known_optimum == doctest::Approx(-0.39788735772973834).epsilon(1e-12));
}

TEST_CASE("levy and griewank vanish at their optima") {
  Benchmark levy = make_benchmark("levy4");
  CHECK(levy.evaluate(levy.to_unit(Point(4, 1.0))) == doctest::Approx(0.0).epsilon(1e-12));
  Benchmark gw = make_benchmark("griewank8");
  CHECK(gw.evaluate(gw.to_unit(Point(8, 0.0))) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("hartmann6 maximum under the negation convention") {
  Benchmark h = make_benchmark("hartmann6");
  Point minimizer = {0.20169, 0.150011, 0.476874, 0.275332, 0.311652, 0.6573};
  CHECK(h.evaluate(minimizer) == doctest::Approx(3.3223680113913387).epsilon(1e-5));
}

TEST_CASE("no probe exceeds the known optimum") {
  Rng rng(7);
  for (const auto& name : benchmark_names()) {
    Benchmark b = make_benchmark(name);
    for (int rep = 0; rep < 20000; ++rep) {
      Point u(b.dim);
      for (double& v : u) v = rng.uniform();
      CHECK(b.evaluate(u) <= b.known_optimum + 1e-6);
    }
  }
}

TEST_CASE("affine transforms round-trip") {
  Rng rng(11);
  for (const auto& name : benchmark_names()) {
    Benchmark b = make_benchmark(name);
    for (int rep = 0; rep < 50; ++rep) {
      Point u(b.dim);
      for (double& v : u) v = rng.uniform();
      Point back = b.to_unit(b.to_native(u));
      for (int j = 0; j < b.dim; ++j) CHECK(back[j] == doctest::Approx(u[j]).epsilon(1e-12));
    }
  }
}

TEST_CASE("evaluate rejects points outside the unit cube") {
  Benchmark b = make_benchmark("branin2");
  CHECK_THROWS_AS(b.evaluate({0.5, 1.2}), InputError);
  CHECK_THROWS_AS(b.evaluate({-0.01, 0.5}), InputError);
  CHECK_NOTHROW(b.evaluate({0.0, 1.0}));
}

TEST_CASE("designs of experiments are reproducible and in range") {
  Benchmark b = make_benchmark("hartmann6");
  auto d1 = doe(b, 10, Rng(3));
  auto d2 = doe(b, 10, Rng(3));
  auto d3 = doe(b, 10, Rng(4));
  REQUIRE(d1.size() == 10);
  bool differs = false;
  for (int i = 0; i < 10; ++i) {
    CHECK(d1[i].first == d2[i].first);
    CHECK(d1[i].second == d2[i].second);
    if (d1[i].first != d3[i].first) differs = true;
    for (double v : d1[i].first) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
    CHECK(d1[i].second == doctest::Approx(b.evaluate(d1[i].first)));
  }
  CHECK(differs);
}

}  // TEST_SUITE
