// Copyright 2026 The Chiralwalk Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch.hpp>

#include <cmath>
#include <numbers>

#include "chiralwalk/cg_sums.hpp"

using namespace chiralwalk;

namespace {
constexpr double kPi = std::numbers::pi;

WalkSpectrum spectrum_at(int n, double theta) {
  return walk_spectrum(ChiralCompleteGraph(n, theta));
}
}  // namespace

TEST_CASE("spectral sums at theta=0 reduce to the complete-graph values") {
  const WalkSpectrum s5 = spectrum_at(5, 0.0);
  CHECK(sum_s(1, s5) == Approx(0.16).epsilon(1e-12));
  CHECK(sum_s(2, s5) == Approx(0.032).epsilon(1e-12));

  const WalkSpectrum s1023 = spectrum_at(1023, 0.0);
  CHECK(sum_s(1, s1023) == Approx(1022.0 / (1023.0 * 1023.0)).epsilon(1e-13));
  CHECK(sum_s(2, s1023) == Approx(1022.0 / std::pow(1023.0, 3)).epsilon(1e-13));
}

TEST_CASE("S1*n reproduces the reference critical rates at n=1023") {
  CHECK(sum_s(1, spectrum_at(1023, 0.8)) * 1023 == Approx(1.44).epsilon(0.01));
  CHECK(sum_s(1, spectrum_at(1023, 1.2)) * 1023 == Approx(2.76).epsilon(0.01));
  CHECK(sum_s(1, spectrum_at(1023, 1.4)) * 1023 == Approx(5.88).epsilon(0.01));

  // pinned values, regression guard
  CHECK(sum_s(1, spectrum_at(1023, 0.8)) * 1023 == Approx(1.436323).margin(1e-5));
  CHECK(sum_s(1, spectrum_at(1023, 1.2)) * 1023 == Approx(2.752546).margin(1e-5));
  CHECK(sum_s(1, spectrum_at(1023, 1.4)) * 1023 == Approx(5.859963).margin(1e-5));
}

TEST_CASE("gamma_c is S1") {
  const WalkSpectrum s = spectrum_at(1023, 0.0);
  CHECK(gamma_c(s) == sum_s(1, s));
  CHECK(gamma_c(s) == Approx(1.0 / 1023.0).epsilon(0.002));
}

TEST_CASE("asymptotic forms") {
  CHECK(s1_asymptotic(1023, 0.0) == Approx(1.0 / 1023.0).epsilon(1e-15));
  CHECK(s1_asymptotic(1023, 0.8) * 1023 == Approx(1.0 / std::cos(0.8)).epsilon(1e-15));
  CHECK(s2_asymptotic(1023, 0.8) ==
        Approx(1.0 / std::pow(1023.0 * std::cos(0.8), 2)).epsilon(1e-14));

  SECTION("exact sums approach the asymptotics away from criticals") {
    CHECK(sum_s(1, spectrum_at(1023, 1.2)) == Approx(s1_asymptotic(1023, 1.2)).epsilon(0.02));
    CHECK(sum_s(2, spectrum_at(1023, 1.2)) == Approx(s2_asymptotic(1023, 1.2)).epsilon(0.05));
  }
  SECTION("the domain ends at pi/2") {
    CHECK_THROWS_AS(s1_asymptotic(1023, kPi / 2.0), InvalidParameterError);
    CHECK_THROWS_AS(s1_asymptotic(1023, 1.7), InvalidParameterError);
    CHECK_THROWS_AS(s2_asymptotic(1023, -0.1), InvalidParameterError);
  }
}

TEST_CASE("asymptotic agreement across the guarded grid") {
  // 50 phases over [0, 1.3]; points inside guard bands are excluded. The
  // 1/E_1^2 term keeps S2 more than 5% off until ~0.05 rad away from the
  // first critical, so this check widens the configurable margin to 0.06.
  const int n = 1023;
  const double agreement_margin = 0.06;
  int tested = 0;
  for (int i = 0; i < 50; ++i) {
    const double theta = 1.3 * i / 49.0;
    if (is_near_critical(theta, n, agreement_margin)) continue;
    const WalkSpectrum spectrum = spectrum_at(n, theta);
    const double s1_rel = sum_s(1, spectrum) * n * std::cos(theta) - 1.0;
    const double s2_rel = sum_s(2, spectrum) * n * n * std::cos(theta) * std::cos(theta) - 1.0;
    INFO("theta=" << theta);
    REQUIRE(std::abs(s1_rel) < 0.02);
    REQUIRE(std::abs(s2_rel) < 0.05);
    ++tested;
  }
  CHECK(tested >= 40);
}

TEST_CASE("predicted success and runtime") {
  SECTION("theta=0 closes algebraically") {
    for (const int n : {5, 1023}) {
      const auto [p_star, t_star] = predicted_success_and_runtime(spectrum_at(n, 0.0));
      CHECK(p_star == Approx(std::sqrt((n - 1.0) / n)).epsilon(1e-12));
      CHECK(t_star == Approx((kPi / 2.0) * n / std::sqrt(n - 1.0)).epsilon(1e-12));
    }
  }
  SECTION("n=1023 baseline peaks near pi*sqrt(N)/2") {
    const auto [p_star, t_star] = predicted_success_and_runtime(spectrum_at(1023, 0.0));
    CHECK(p_star == Approx(1.0).epsilon(0.01));
    CHECK(t_star == Approx(50.241).epsilon(0.01));
  }
  SECTION("theta=0.8 stays within 5 percent") {
    const auto [p_star, t_star] = predicted_success_and_runtime(spectrum_at(1023, 0.8));
    CHECK(p_star == Approx(1.0).epsilon(0.05));
    CHECK(t_star == Approx(50.241).epsilon(0.05));
    CHECK(p_star == Approx(0.9976).margin(5e-4));
    CHECK(t_star == Approx(50.3632).margin(5e-3));
  }
}

TEST_CASE("critical phase table") {
  const CriticalThetaTable table = critical_thetas(1023, 9);
  REQUIRE(table.entries.size() == 5);

  const double reference[] = {1.0039, 1.3617, 1.4442, 1.4801, 1.5002};
  for (int i = 0; i < 5; ++i) {
    CHECK(table.entries[i].j == 2 * i + 1);
    CHECK(std::abs(table.entries[i].theta_c_approx - reference[i]) < 1e-3);
    CHECK(std::abs(table.entries[i].theta_c_exact - reference[i]) < 5e-3);
  }

  SECTION("the exact critical phase is a root of the walk eigenvalue") {
    for (const CriticalTheta& entry : table.entries) {
      const ChiralCompleteGraph g(1023, entry.theta_c_exact);
      REQUIRE(std::abs(walk_eigenvalue(entry.j, g)) < 1e-9);
    }
  }
  SECTION("strictly increasing with shrinking gaps") {
    for (std::size_t i = 1; i < table.entries.size(); ++i) {
      REQUIRE(table.entries[i].theta_c_exact > table.entries[i - 1].theta_c_exact);
    }
    for (std::size_t i = 2; i < table.entries.size(); ++i) {
      const double prev_gap =
          table.entries[i - 1].theta_c_exact - table.entries[i - 2].theta_c_exact;
      const double gap = table.entries[i].theta_c_exact - table.entries[i - 1].theta_c_exact;
      REQUIRE(gap < prev_gap);
    }
  }
  SECTION("validation") {
    CHECK_THROWS_AS(critical_thetas(1023, 8), InvalidParameterError);
    CHECK_THROWS_AS(critical_thetas(5, 5), InvalidParameterError);
    CHECK_THROWS_AS(critical_thetas(4, 1), InvalidParameterError);
    CHECK_NOTHROW(critical_thetas(5, 3));
  }
}

TEST_CASE("near-critical guard band") {
  CHECK_FALSE(is_near_critical(0.8, 1023, 0.02));
  CHECK(is_near_critical(1.0039, 1023, 0.02));
  CHECK_FALSE(is_near_critical(1.2, 1023, 0.02));
  CHECK(is_near_critical(1.55, 1023, 0.02));  // dense-critical region near pi/2
  CHECK_THROWS_AS(is_near_critical(0.5, 1023, 0.0), InvalidParameterError);
}

TEST_CASE("S1 diverges across each critical phase") {
  // The spike narrows like 1/n, so the fixed 1e-4 probe offset resolves the
  // 10x contrast at moderate n (at n=1023 the divergent term at 1e-4 is
  // already comparable to the background).
  const int n = 101;
  const CriticalThetaTable table = critical_thetas(n, 3);
  for (const CriticalTheta& entry : table.entries) {
    const double near_right = std::abs(sum_s(1, spectrum_at(n, entry.theta_c_exact + 1e-4)));
    const double far_right = std::abs(sum_s(1, spectrum_at(n, entry.theta_c_exact + 0.05)));
    const double near_left = std::abs(sum_s(1, spectrum_at(n, entry.theta_c_exact - 1e-4)));
    const double far_left = std::abs(sum_s(1, spectrum_at(n, entry.theta_c_exact - 0.05)));
    INFO("j=" << entry.j);
    REQUIRE(near_right > 10.0 * far_right);
    REQUIRE(near_left > 10.0 * far_left);
  }

  SECTION("the sum changes sign across the crossing") {
    const double theta_c = critical_thetas(n, 1).entries[0].theta_c_exact;
    CHECK(sum_s(1, spectrum_at(n, theta_c - 1e-4)) > 0.0);
    CHECK(sum_s(1, spectrum_at(n, theta_c + 1e-4)) < 0.0);
  }
}

TEST_CASE("sum_s raises at an exactly critical phase") {
  const CriticalThetaTable table = critical_thetas(1023, 1);
  CHECK_THROWS_AS(sum_s(1, spectrum_at(1023, table.entries[0].theta_c_exact)),
                  CriticalThetaError);

  const double theta_c_small = std::atan(5.0 / alpha(1, 5));
  CHECK_THROWS_AS(sum_s(1, spectrum_at(5, theta_c_small)), CriticalThetaError);
  CHECK_THROWS_AS(sum_s_split(1, spectrum_at(5, theta_c_small)), CriticalThetaError);
}

TEST_CASE("odd/even split halves of S1") {
  const WalkSpectrum spectrum = spectrum_at(1023, 0.8);
  const SumSplit split = sum_s_split(1, spectrum);
  CHECK(split.total == Approx(sum_s(1, spectrum)).epsilon(1e-12));
  const double half = 1.0 / (2.0 * 1023.0 * std::cos(0.8));
  CHECK(split.odd_part == Approx(half).epsilon(0.05));
  CHECK(split.even_part == Approx(half).epsilon(0.05));
}

TEST_CASE("cg_sums record") {
  SECTION("away from criticals the predictions are present") {
    const CGSums sums = cg_sums(spectrum_at(1023, 0.8));
    CHECK(sums.gamma_c == sums.s1);
    CHECK(sums.near_critical == false);
    REQUIRE(sums.p_star.has_value());
    REQUIRE(sums.t_star.has_value());
    CHECK(*sums.p_star == sums.s1 / std::sqrt(sums.s2));
    CHECK(sums.min_abs_eigenvalue > 0.0);
  }
  SECTION("inside a guard band the predictions are withheld") {
    const CGSums sums = cg_sums(spectrum_at(1023, 1.010));
    CHECK(sums.near_critical);
    CHECK_FALSE(sums.p_star.has_value());
    CHECK_FALSE(sums.t_star.has_value());
  }
}

TEST_CASE("negative walk eigenvalues appear one per crossed critical phase") {
  const CriticalThetaTable table = critical_thetas(1023, 5);
  const auto negatives = [](const WalkSpectrum& s) {
    int count = 0;
    for (int j = 1; j < s.n; ++j) count += s.eigenvalues(j) < 0.0;
    return count;
  };
  CHECK(negatives(spectrum_at(1023, 0.95)) == 0);
  CHECK(negatives(spectrum_at(1023, 0.5 * (table.entries[0].theta_c_exact +
                                           table.entries[1].theta_c_exact))) == 1);
  CHECK(negatives(spectrum_at(1023, 0.5 * (table.entries[1].theta_c_exact +
                                           table.entries[2].theta_c_exact))) == 2);
}
