// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rasterix/bench.hpp"
#include "rasterix/error.hpp"
#include "rasterix/synth.hpp"

using namespace rasterix;

TEST_CASE("summaries use the sample standard deviation") {
  const std::vector<double> v{2, 4, 4, 4, 5, 5, 7, 9};
  const auto s = bench::summarize(v);
  CHECK(s.mean == doctest::Approx(5.0));
  CHECK(s.stddev == doctest::Approx(std::sqrt(32.0 / 7.0)));
  CHECK(bench::summarize(std::vector<double>{3.0}).stddev == 0.0);
  CHECK(bench::summarize(std::vector<double>{}).mean == 0.0);
}

TEST_CASE("line fits") {
  const std::vector<double> x{1, 2, 3, 4, 5};
  const std::vector<double> exact{3, 5, 7, 9, 11};
  const auto f = bench::fit_line(x, exact);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.r2 == doctest::Approx(1.0));

  // Hand-computed: slope 0.6, intercept 2.2, R^2 = 0.6.
  const auto g = bench::fit_line(x, std::vector<double>{2, 4, 5, 4, 5});
  CHECK(g.slope == doctest::Approx(0.6));
  CHECK(g.intercept == doctest::Approx(2.2));
  CHECK(g.r2 == doctest::Approx(0.6));

  const auto flat = bench::fit_line(x, std::vector<double>{1, -1, 1, -1, 1});
  CHECK(flat.r2 >= 0.0);
  CHECK(flat.r2 <= 1.0);
  CHECK_THROWS_AS(bench::fit_line(std::vector<double>{1}, std::vector<double>{1}), Error);
}

TEST_CASE("workloads are reproducible for a seed") {
  const auto layout = synth::TileLayout::for_count(400);
  const BoundingBox extent = layout.extent(400);
  const auto a = synth::make_queries(extent, layout.tile_deg, 200, 5);
  const auto b = synth::make_queries(extent, layout.tile_deg, 200, 5);
  const auto c = synth::make_queries(extent, layout.tile_deg, 200, 6);
  REQUIRE(a.size() == 200);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].bbox == b[i].bbox);
    CHECK(a[i].time == b[i].time);
    differs |= !(a[i].bbox == c[i].bbox);
    CHECK(a[i].bbox.min_lon() >= extent.min_lon());
    CHECK(a[i].bbox.max_lon() <= extent.max_lon() + 1e-9);
    CHECK(a[i].bbox.min_lat() >= extent.min_lat());
    CHECK(a[i].bbox.max_lat() <= extent.max_lat() + 1e-9);
    const double w = a[i].bbox.width() / layout.tile_deg;
    const double h = a[i].bbox.height() / layout.tile_deg;
    CHECK(w >= 1.0 - 1e-9);
    CHECK(w <= 4.0 + 1e-9);
    CHECK(h >= 1.0 - 1e-9);
    CHECK(h <= 4.0 + 1e-9);
    const auto days = (a[i].time.end() - a[i].time.start()) / synth::kDay;
    CHECK(days >= 30);
    CHECK(days <= 365);
  }
  CHECK(differs);
  CHECK(synth::make_entries(layout, 50, 9).size() == 50);
  CHECK(synth::capture_time(9, 3) == synth::capture_time(9, 3));
}

TEST_CASE("brute force selection equals the oracle") {
  const auto layout = synth::TileLayout::for_count(300);
  const auto entries = synth::make_entries(layout, 300, 10);
  const auto rows = bench::catalog_rows(entries, {});
  for (const Query& q : synth::make_queries(layout.extent(300), layout.tile_deg, 200, 11)) {
    CHECK(bench::brute_force_select(rows, q) == oracle::scan(entries, q.bbox, q.time));
  }
}

TEST_CASE("scaling report structure") {
  const auto layout = synth::TileLayout::for_count(200);
  const auto entries = synth::make_entries(layout, 200, 12);
  const auto rows = bench::catalog_rows(entries, {});
  const auto workload = synth::make_queries(layout.extent(200), layout.tile_deg, 30, 13);
  auto index = MultiIndex::build_all(entries);
  const auto report = bench::bench_query_scaling(*index, rows, workload, {{10, 20, 30}, 3, 13});
  const auto j = report.to_json();
  CHECK(j["scenario"] == "query_scaling");
  CHECK(j["repeat"] == 3);
  CHECK(j["counts"] == nlohmann::json::array({10, 20, 30}));
  for (const char* m : {"multi", "geohash", "quadtree", "ortholist", "brute_force"}) {
    REQUIRE(j["methods"].contains(m));
    CHECK(j["methods"][m]["mean_ms"].size() == 3);
    CHECK(j["methods"][m]["stddev_ms"].size() == 3);
    for (const auto& v : j["methods"][m]["mean_ms"]) CHECK(v.get<double>() >= 0.0);
  }
  CHECK(j["linear_fit"]["r2"].get<double>() >= 0.0);
  CHECK(j["linear_fit"]["r2"].get<double>() <= 1.0);
  std::uint64_t races = 0;
  for (const auto& [k, v] : report.winners) races += v;
  CHECK(races == 3 * 60);
  CHECK(report.to_text().find("multi") != std::string::npos);

  CHECK_THROWS_AS(bench::bench_query_scaling(*index, rows, workload, {{20, 10}, 1, 1}), Error);
  CHECK_THROWS_AS(bench::bench_query_scaling(*index, rows, workload, {{100}, 1, 1}), Error);
}

TEST_CASE("overhead report structure") {
  const auto layout = synth::TileLayout::for_count(300);
  const auto entries = synth::make_entries(layout, 300, 14);
  const auto report = bench::bench_overhead(entries, 3);
  const auto j = report.to_json();
  CHECK(j["scenario"] == "overhead");
  CHECK(j["repeat"] == 3);
  std::size_t sum = 0;
  for (const char* m : {"geohash", "quadtree", "ortholist"}) {
    REQUIRE(j["methods"].contains(m));
    sum += j["methods"][m]["size_bytes"].get<std::size_t>();
    CHECK(j["methods"][m]["build_ms"].contains("mean"));
    CHECK(j["methods"][m]["build_ms"].contains("stddev"));
  }
  const auto multi = j["methods"]["multi"]["size_bytes"].get<std::size_t>();
  CHECK(multi >= sum);
  CHECK(static_cast<double>(multi) <= 1.05 * static_cast<double>(sum));
}
