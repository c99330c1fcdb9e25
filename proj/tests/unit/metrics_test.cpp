#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "hatcc/generators.hpp"
#include "hatcc/metrics.hpp"
#include "hatcc/nerve.hpp"
#include "hatcc/reports.hpp"

using namespace hatcc;

namespace {

TEST(MeanTv, Examples) {
  EXPECT_EQ(mean_tv({{0.3, 0.7}}, {{0.3, 0.7}}), 0.0);
  EXPECT_DOUBLE_EQ(mean_tv({{1, 0}}, {{0, 1}}), 1.0);
  EXPECT_DOUBLE_EQ(mean_tv({{0.75, 0.25}}, {{0.5, 0.5}}), 0.25);
  EXPECT_DOUBLE_EQ(mean_tv({{1, 0}, {0.5, 0.5}}, {{0, 1}, {0.5, 0.5}}), 0.5);
  EXPECT_THROW(mean_tv({{1, 0}}, {{1, 0, 0}}), std::invalid_argument);
}

TEST(LogScore, Examples) {
  EXPECT_EQ(mean_log_score({{1, 0}, {0, 1}}, {0, 1}), 0.0);
  EXPECT_DOUBLE_EQ(mean_log_score({{0.5, 0.5}}, {1}), std::log(0.5));
  const double s = mean_log_score({{1, 0}}, {1});
  EXPECT_TRUE(std::isinf(s) && s < 0);
  EXPECT_DOUBLE_EQ(mean_log_score({{1, 0}}, {1}, 1e-6), std::log(1e-6));
}

TEST(Hamming, Examples) {
  EXPECT_EQ(map_hamming({0, 1, 1, 0}, {0, 1, 1, 0}), 0);
  EXPECT_EQ(map_hamming({0, 1, 1, 0}, {1, 0, 0, 1}), 4);
  EXPECT_EQ(map_hamming({0, 1, 1, 0}, {0, 1, 0, 0}), 1);
}

TEST(Argmax, SmallestStateOnTies) {
  EXPECT_EQ(argmax_assignment({{0.5, 0.5}, {0.2, 0.3, 0.5}}), (std::vector<State>{0, 2}));
}

TEST(Signature, FromHolonomyReports) {
  for (auto parity : {Parity::Even, Parity::Odd}) {
    const auto g = gen_four_cycle(parity);
    const auto nerve = build_factor_nerve(g);
    const auto sig = holonomy_signature(holonomy_reports(g, nerve, backbone(nerve)));
    EXPECT_EQ(sig.generators, 1);
    if (parity == Parity::Even) {
      EXPECT_EQ(sig.nontrivial_generators, 0);
    } else {
      EXPECT_EQ(sig.nontrivial_generators, 1);
      EXPECT_EQ(sig.orbit_sizes, (std::vector<int>{2}));
    }
  }
}

TEST(Signature, WeightsAreSortedDescending) {
  SectorResult r;
  r.orbits = {{0}, {1}, {2}};
  for (double w : {0.1, 0.6, 0.3}) {
    SectorRun run;
    run.weight = w;
    r.sectors.push_back(run);
  }
  const auto sig = holonomy_signature(r);
  EXPECT_EQ(sig.weights, (std::vector<double>{0.6, 0.3, 0.1}));
  EXPECT_DOUBLE_EQ(sig.dominant_weight(), 0.6);
}

TEST(Csv, RowHasOneFieldPerColumn) {
  MetricsRow row;
  row.family = "zk";
  row.method = "bp";
  const auto count = [](const std::string& s) { return std::count(s.begin(), s.end(), ','); };
  EXPECT_EQ(count(csv_header()), count(csv_row(row)));
}

TEST(Checksum, StableAndStructural) {
  const auto g = gen_four_cycle(Parity::Odd);
  const auto nerve = build_factor_nerve(g);
  const auto reports = holonomy_reports(g, nerve, backbone(nerve));
  const auto a = structural_checksum(reports);
  EXPECT_EQ(a, structural_checksum(holonomy_reports(g, nerve, backbone(nerve))));
  const auto even = gen_four_cycle(Parity::Even);
  const auto en = build_factor_nerve(even);
  EXPECT_NE(a, structural_checksum(holonomy_reports(even, en, backbone(en))));
  EXPECT_EQ(checksum_hex(a).size(), 16U);
  EXPECT_NE(a, structural_checksum(reports, {{0, 1}}));
}

}  // namespace
