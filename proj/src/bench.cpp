// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#include "rasterix/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "rasterix/error.hpp"
#include "rasterix/task_worker.hpp"

namespace rasterix::bench {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

nlohmann::json summary_json(const Summary& s) { return {{"mean", s.mean}, {"stddev", s.stddev}}; }

}  // namespace

Summary summarize(std::span<const double> samples) {
  Summary s;
  if (samples.empty()) return s;
  s.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
  if (samples.size() > 1) {
    double ss = 0.0;
    for (double v : samples) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(samples.size() - 1));
  }
  return s;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    fail(ErrorCode::InvalidArgument, "a line fit needs at least two paired samples");
  }
  const auto n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  LinearFit fit;
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (fit.intercept + fit.slope * x[i]);
    ss_res += e * e;
  }
  fit.r2 = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return fit;
}

std::vector<TileMetadata> catalog_rows(std::span<const IndexEntry> entries,
                                       const IndexParams& params, std::string_view satellite) {
  std::vector<TileMetadata> rows;
  rows.reserve(entries.size());
  for (const IndexEntry& e : entries) {
    TileMetadata m;
    m.tile_id = e.id;
    m.bbox = e.bbox;
    m.capture_time = e.time.start();
    m.satellite = std::string(satellite);
    m.band_labels = {"Red", "NIR"};
    m.index_keys = compute_index_keys(e.bbox, params);
    rows.push_back(std::move(m));
  }
  return rows;
}

TileIdSet brute_force_select(std::span<const TileMetadata> rows, const Query& q) {
  TileIdSet out;
  for (const TileMetadata& m : rows) {
    if (intersects(m.bbox, q.bbox) &&
        overlaps_time(TimeRange::instant(m.capture_time), q.time) &&
        (!q.satellite || *q.satellite == m.satellite)) {
      out.push_back(m.tile_id);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ScalingReport bench_query_scaling(MultiIndex& index, std::span<const TileMetadata> catalog,
                                  const std::vector<Query>& workload,
                                  const ScalingConfig& config) {
  if (config.repeat < 1) fail(ErrorCode::InvalidArgument, "repeat must be >= 1");
  if (config.counts.empty()) fail(ErrorCode::InvalidArgument, "no query counts given");
  if (!std::is_sorted(config.counts.begin(), config.counts.end())) {
    fail(ErrorCode::InvalidArgument, "query counts must be increasing");
  }
  if (config.counts.back() > workload.size()) {
    fail(ErrorCode::InvalidArgument, "workload smaller than the largest count");
  }

  ScalingReport report;
  report.counts = config.counts;
  report.repeat = config.repeat;
  report.tiles = index.entry_count();
  report.seed = config.seed;

  const auto deadline = std::chrono::seconds(30);
  TaskWorker scan_worker;

  using Runner = std::function<void(const Query&)>;
  std::vector<std::pair<std::string, Runner>> methods;
  methods.emplace_back(kMulti, [&](const Query& q) {
    const RaceOutcome o = index.race_query(q.bbox, q.time, deadline);
    report.winners[std::string(to_string(o.winner))]++;
  });
  for (IndexKind kind : kAllIndexKinds) {
    methods.emplace_back(std::string(to_string(kind)), [&index, kind, deadline](const Query& q) {
      index.race_query(q.bbox, q.time, deadline, KindSet::only(kind));
    });
  }
  methods.emplace_back(kBruteForce, [&](const Query& q) {
    std::promise<TileIdSet> done;
    auto result = done.get_future();
    scan_worker.post([&] { done.set_value(brute_force_select(catalog, q)); });
    result.get();
  });

  // samples[method][count index][rep]
  std::map<std::string, std::vector<std::vector<double>>> samples;
  for (const auto& [name, run] : methods) {
    samples[name].assign(config.counts.size(), std::vector<double>{});
  }
  for (int rep = 0; rep < config.repeat; ++rep) {
    for (std::size_t ci = 0; ci < config.counts.size(); ++ci) {
      // Rotate the method order so no method always runs first.
      for (std::size_t k = 0; k < methods.size(); ++k) {
        const auto& [name, run] = methods[(k + static_cast<std::size_t>(rep)) % methods.size()];
        const auto start = Clock::now();
        for (std::size_t i = 0; i < config.counts[ci]; ++i) run(workload[i]);
        samples[name][ci].push_back(ms_since(start));
      }
    }
  }

  for (const auto& [name, per_count] : samples) {
    for (const auto& s : per_count) report.elapsed_ms[name].push_back(summarize(s));
  }
  std::vector<double> x, y;
  for (std::size_t ci = 0; ci < config.counts.size(); ++ci) {
    x.push_back(static_cast<double>(config.counts[ci]));
    y.push_back(report.elapsed_ms[kMulti][ci].mean);
  }
  if (x.size() >= 2) report.multi_fit = fit_line(x, y);
  return report;
}

OverheadReport bench_overhead(const std::vector<IndexEntry>& entries, int repeat,
                              const IndexParams& params) {
  if (repeat < 1) fail(ErrorCode::InvalidArgument, "repeat must be >= 1");
  OverheadReport report;
  report.repeat = repeat;
  report.tiles = entries.size();

  std::map<std::string, std::vector<double>> build_ms;
  for (int rep = 0; rep < repeat; ++rep) {
    for (IndexKind kind : kAllIndexKinds) {
      auto copy = entries;
      const auto index = index_build(kind, std::move(copy), params);
      const std::string name(to_string(kind));
      build_ms[name].push_back(std::chrono::duration<double, std::milli>(index->build_time()).count());
      if (rep == 0) report.size_bytes[name] = index->serialize().size();
    }
    MultiIndex::Options opts;
    opts.params = params;
    const auto multi = MultiIndex::build_all(entries, opts);
    build_ms[kMulti].push_back(
        std::chrono::duration<double, std::milli>(multi->build_stats().wall_time).count());
    if (rep == 0) report.size_bytes[kMulti] = multi->serialize().size();
  }
  for (const auto& [name, s] : build_ms) report.build_ms[name] = summarize(s);
  return report;
}

nlohmann::json ScalingReport::to_json() const {
  nlohmann::json j;
  j["scenario"] = "query_scaling";
  j["repeat"] = repeat;
  j["tiles"] = tiles;
  j["seed"] = seed;
  j["counts"] = counts;
  j["unit"] = "ms";
  for (const auto& [name, per_count] : elapsed_ms) {
    nlohmann::json mean = nlohmann::json::array(), sd = nlohmann::json::array();
    for (const Summary& s : per_count) {
      mean.push_back(s.mean);
      sd.push_back(s.stddev);
    }
    j["methods"][name] = {{"mean_ms", mean}, {"stddev_ms", sd}};
  }
  j["linear_fit"] = {{"method", kMulti},
                     {"slope_ms_per_query", multi_fit.slope},
                     {"intercept_ms", multi_fit.intercept},
                     {"r2", multi_fit.r2}};
  j["winners"] = winners;
  return j;
}

std::string ScalingReport::to_text() const {
  std::ostringstream os;
  os << "query scaling: " << tiles << " tiles, " << repeat << " repetitions (mean ± sd, ms)\n";
  os << std::setw(8) << "queries";
  for (const auto& [name, per_count] : elapsed_ms) os << std::setw(24) << name;
  os << '\n' << std::fixed << std::setprecision(3);
  for (std::size_t ci = 0; ci < counts.size(); ++ci) {
    os << std::setw(8) << counts[ci];
    for (const auto& [name, per_count] : elapsed_ms) {
      std::ostringstream cell;
      cell << std::fixed << std::setprecision(3) << per_count[ci].mean << " ± "
           << per_count[ci].stddev;
      os << std::setw(24) << cell.str();
    }
    os << '\n';
  }
  os << "multi-index fit: " << multi_fit.slope << " ms/query, R^2 = " << std::setprecision(4)
     << multi_fit.r2 << '\n';
  return os.str();
}

nlohmann::json OverheadReport::to_json() const {
  nlohmann::json j;
  j["scenario"] = "overhead";
  j["repeat"] = repeat;
  j["tiles"] = tiles;
  j["workers"] = workers;
  for (const auto& [name, bytes] : size_bytes) {
    j["methods"][name]["size_bytes"] = bytes;
    j["methods"][name]["build_ms"] = summary_json(build_ms.at(name));
  }
  return j;
}

std::string OverheadReport::to_text() const {
  std::ostringstream os;
  os << "index overhead: " << tiles << " tiles, " << repeat << " repetitions\n";
  os << std::setw(12) << "method" << std::setw(16) << "size (bytes)" << std::setw(24)
     << "build (ms, mean ± sd)" << '\n';
  for (const auto& [name, bytes] : size_bytes) {
    const Summary& s = build_ms.at(name);
    std::ostringstream cell;
    cell << std::fixed << std::setprecision(3) << s.mean << " ± " << s.stddev;
    os << std::setw(12) << name << std::setw(16) << bytes << std::setw(24) << cell.str() << '\n';
  }
  return os.str();
}

}  // namespace rasterix::bench
