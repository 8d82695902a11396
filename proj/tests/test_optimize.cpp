#include <doctest.h>

#include <random>

#include "random_params.hpp"
#include "sdea/optimize.hpp"

using namespace sdea;

namespace {

bool criterion_holds(const SystemParams& p, const VirtualCoupler& vc, Criterion c) {
  return c == Criterion::kPassivity ? check_two_port_passivity(p, vc).overall
                                    : check_absolute_stability(p, vc).overall;
}

void check_optimum_is_tight(const SystemParams& p, const OptimizationResult& r) {
  REQUIRE(r.feasible);
  CHECK(r.b22_opt > 0.0);
  CHECK(r.b22_opt <= 4.0 * p.Bf);
  CHECK(criterion_holds(p, {r.k22_max - 1e-3, r.b22_opt}, r.criterion));
  CHECK_FALSE(criterion_holds(p, {r.k22_max + 1.0, r.b22_opt}, r.criterion));
}

}  // namespace

TEST_CASE("maximize_k22, nominal plant without feed-forward") {
  const auto p = SystemParams::table1();
  const auto r = maximize_k22(p, Criterion::kPassivity);
  CHECK(r.k22_max == doctest::Approx(408.5).epsilon(1.0 / 408.5));
  CHECK(r.b22_opt == doctest::Approx(0.17).epsilon(0.01 / 0.17));
  CHECK(r.unimodal);
  CHECK_FALSE(r.alpha_opt);
  CHECK(r.trace.size() > 50);
  check_optimum_is_tight(p, r);
}

TEST_CASE("maximize_k22 under full feed-forward stays tight") {
  auto p = SystemParams::table1();
  p.alpha = 0.0;
  const auto r = maximize_k22(p, Criterion::kPassivity);
  // frozen from this implementation; the reference value 367.0 at 0.14 is in test_reference_values
  CHECK(r.k22_max == doctest::Approx(360.53).epsilon(1e-4));
  CHECK(r.b22_opt == doctest::Approx(0.1363).epsilon(1e-2));
  check_optimum_is_tight(p, r);
}

TEST_CASE("absolute-stability optimum is tight and dominates passivity") {
  const auto p = SystemParams::table1();
  const auto a = maximize_k22(p, Criterion::kAbsolute);
  const auto t = maximize_k22(p, Criterion::kPassivity);
  CHECK(a.criterion == Criterion::kAbsolute);
  CHECK(a.k22_max >= t.k22_max);
  check_optimum_is_tight(p, a);
}

TEST_CASE("maximize_k22_over_alpha") {
  const auto p = SystemParams::table1();
  const auto r = maximize_k22_over_alpha(p, Criterion::kPassivity);
  REQUIRE(r.alpha_opt);
  CHECK(*r.alpha_opt == doctest::Approx(0.9).epsilon(0.05 / 0.9));
  CHECK(r.b22_opt == doctest::Approx(0.15).epsilon(0.01 / 0.15));
  auto q = p;
  q.alpha = *r.alpha_opt;
  check_optimum_is_tight(q, r);

  const auto ends = maximize_k22_over_alpha(p, Criterion::kPassivity, {}, {0.0, 1.0});
  CHECK(*ends.alpha_opt == 1.0);
  CHECK(ends.k22_max == doctest::Approx(maximize_k22(p, Criterion::kPassivity).k22_max));
  CHECK(r.k22_max >= ends.k22_max);
}

TEST_CASE("Bf = 0 is infeasible for every alpha") {
  auto p = SystemParams::table1();
  p.Bf = 0.0;
  for (double a : {0.0, 0.5, 1.0}) {
    p.alpha = a;
    const auto r = maximize_k22(p, Criterion::kPassivity);
    CHECK_FALSE(r.feasible);
    CHECK(r.k22_max == 0.0);
  }
  const auto r = maximize_k22_over_alpha(p, Criterion::kPassivity);
  CHECK(r.k22_max == 0.0);
}

TEST_CASE("baseline failures are reported") {
  auto p = SystemParams::table1();
  p.If = 23670.0;
  CHECK_THROWS_AS(maximize_k22(p, Criterion::kPassivity), Error);
  try {
    maximize_k22(p, Criterion::kPassivity);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBaselineNotPassive);
  }
  CHECK_THROWS_AS(maximize_k22_over_alpha(p, Criterion::kPassivity), Error);
}

TEST_CASE("property: optima are feasible, tight and pass the unimodality guard") {
  std::mt19937_64 rng(77);
  int solved = 0, guarded = 0;
  for (int trial = 0; trial < 60 && solved < 25; ++trial) {
    const auto p = testing::random_params(rng, 0.25);
    OptimizationResult r;
    try {
      r = maximize_k22(p, Criterion::kPassivity);
    } catch (const Error&) {
      continue;
    }
    if (!r.feasible) continue;
    ++solved;
    guarded += r.unimodal;
    check_optimum_is_tight(p, r);
    double sweep_max = 0.0;
    for (int i = 1; i <= 50; ++i) sweep_max = std::max(sweep_max, k22_upper_bound(p, 4.0 * p.Bf * i / 50));
    CHECK(r.k22_max >= sweep_max - 1e-3);
  }
  MESSAGE("solved ", solved, ", unimodal ", guarded);
  CHECK(solved >= 15);
}

TEST_CASE("property: absolute optimum >= passivity optimum") {
  std::mt19937_64 rng(88);
  OptimizeOptions fast;
  fast.check.points = 1000;
  int solved = 0;
  for (int trial = 0; trial < 30 && solved < 6; ++trial) {
    const auto p = testing::random_params(rng, 0.2);
    try {
      const auto t = maximize_k22(p, Criterion::kPassivity, fast);
      const auto a = maximize_k22(p, Criterion::kAbsolute, fast);
      if (!t.feasible) continue;
      ++solved;
      CHECK(a.k22_max >= t.k22_max - 1e-3);
    } catch (const Error&) {
    }
  }
  CHECK(solved >= 3);
}
