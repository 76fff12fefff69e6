// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 larr contributors
#include "larr/demo.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "larr/events.hpp"
#include "larr/groupby.hpp"
#include "larr/io.hpp"
#include "larr/ops.hpp"
#include "larr/plot.hpp"

namespace larr {

namespace {

constexpr double kTofMax = 20000.0; // us
constexpr int64_t kTofBins = 120;
constexpr int64_t kThetaBins = 8;

// Uniform in (0, 1] with 53-bit resolution; never 0 so log() stays finite.
double u01(std::mt19937_64 &rng) {
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

double gaussian(std::mt19937_64 &rng, double mu, double sigma) {
  const double r = std::sqrt(-2.0 * std::log(u01(rng)));
  const double phi = 6.283185307179586 * u01(rng);
  return mu + sigma * r * std::cos(phi);
}

// Exactly `events` entries split as evenly as possible over the pixels.
std::vector<int64_t> per_pixel_counts(int64_t pixels, int64_t events) {
  std::vector<int64_t> counts(static_cast<size_t>(pixels), events / pixels);
  for (int64_t i = 0; i < events % pixels; ++i)
    ++counts[static_cast<size_t>(i)];
  return counts;
}

DataArray make_events(int64_t pixels, int64_t events, uint64_t seed, bool flat) {
  std::mt19937_64 rng(seed);
  const std::vector<int64_t> counts = per_pixel_counts(pixels, events);
  std::vector<std::vector<double>> tof(static_cast<size_t>(pixels));
  std::vector<std::vector<double>> weights(static_cast<size_t>(pixels));
  for (int64_t i = 0; i < pixels; ++i) {
    const size_t u = static_cast<size_t>(i);
    tof[u].reserve(static_cast<size_t>(counts[u]));
    // Three pixel groups, each seeing a two-component mixture at its own
    // positions; the vanadium reference is flat in time-of-flight instead.
    const double g = static_cast<double>(i % 3);
    for (int64_t k = 0; k < counts[u]; ++k) {
      double t;
      if (flat) {
        t = kTofMax * u01(rng);
      } else if (u01(rng) < 0.65) {
        t = gaussian(rng, 3600.0 + 900.0 * g, 700.0 + 60.0 * g);
      } else {
        t = gaussian(rng, 9500.0 + 650.0 * g, 1250.0);
      }
      tof[u].push_back(t);
    }
    weights[u].assign(static_cast<size_t>(counts[u]), 1.0);
  }
  Variable data = make_event_variable<double>(Dims{{"spectrum", pixels}}, Unit::counts(),
                                              weights, weights);
  std::map<std::string, Variable> coords;
  coords.emplace("tof",
                 make_event_variable<double>(Dims{{"spectrum", pixels}}, Unit::us(), tof));
  std::vector<int64_t> ids(static_cast<size_t>(pixels));
  std::vector<double> theta(static_cast<size_t>(pixels));
  for (int64_t i = 0; i < pixels; ++i) {
    ids[static_cast<size_t>(i)] = i;
    theta[static_cast<size_t>(i)] =
        0.05 + 1.45 * (static_cast<double>(i) + 0.5) / static_cast<double>(pixels);
  }
  coords.emplace("spectrum", make_variable<int64_t>(Dims{{"spectrum", pixels}},
                                                    Unit::dimensionless(), std::move(ids)));
  coords.emplace("theta", make_variable<double>(Dims{{"spectrum", pixels}}, Unit::rad(),
                                                std::move(theta)));
  return DataArray(std::move(data), std::move(coords), {});
}

// Stand-in for an instrument calibration: tof -> gain * tof + delay, with
// per-pixel constants.
DataArray calibrate(const DataArray &da, int64_t pixels) {
  std::vector<double> gain(static_cast<size_t>(pixels));
  std::vector<double> delay(static_cast<size_t>(pixels));
  for (int64_t i = 0; i < pixels; ++i) {
    gain[static_cast<size_t>(i)] = 0.98 + 0.04 * static_cast<double>(i % 17) / 16.0;
    delay[static_cast<size_t>(i)] = 25.0 * static_cast<double>(i % 5 - 2);
  }
  const Variable vgain = make_variable<double>(Dims{{"spectrum", pixels}},
                                               Unit::dimensionless(), std::move(gain));
  const Variable vdelay =
      make_variable<double>(Dims{{"spectrum", pixels}}, Unit::us(), std::move(delay));
  DataArray scaled = event_dense_op(da, vgain, BinaryOp::Multiply, "tof");
  return event_dense_op(scaled, vdelay, BinaryOp::Add, "tof");
}

Variable tof_edges() {
  std::vector<double> e(static_cast<size_t>(kTofBins) + 1);
  for (int64_t k = 0; k <= kTofBins; ++k)
    e[static_cast<size_t>(k)] =
        kTofMax * static_cast<double>(k) / static_cast<double>(kTofBins);
  return make_variable<double>(Dims{{"tof", kTofBins + 1}}, Unit::us(), std::move(e));
}

Variable theta_edges() {
  std::vector<double> e(static_cast<size_t>(kThetaBins) + 1);
  for (int64_t k = 0; k <= kThetaBins; ++k)
    e[static_cast<size_t>(k)] = 1.6 * static_cast<double>(k) / static_cast<double>(kThetaBins);
  return make_variable<double>(Dims{{"theta", kThetaBins + 1}}, Unit::rad(), std::move(e));
}

} // namespace

int run_demo(int64_t pixels, int64_t events, uint64_t seed,
             const std::filesystem::path &out_dir, std::ostream &log) {
  if (pixels < 1 || events < 1)
    throw UnsupportedError("demo needs at least one pixel and one event");
  std::filesystem::create_directories(out_dir);
  int files = 0;
  const auto emit = [&](const auto &container, const char *name) {
    const auto path = out_dir / name;
    save(container, path);
    ++files;
    log << "wrote " << path.string() << "\n";
  };

  const DataArray sample = calibrate(make_events(pixels, events, seed, false), pixels);
  const DataArray vanadium =
      calibrate(make_events(pixels, events, seed ^ 0x9e3779b97f4a7c15ULL, true), pixels);
  emit(sample, "sample_events.json");
  emit(vanadium, "vanadium_events.json");

  const Variable edges = tof_edges();
  Dataset histograms;
  histograms.set("sample", histogram(sample, edges));
  histograms.set("vanadium", histogram(vanadium, edges));
  emit(histograms, "histograms.json");

  Dataset summed;
  for (const auto &name : histograms.names())
    summed.set(name, sum(histograms.get(name), "spectrum"));
  emit(summed, "summed.json");

  const DataArray normalized = divide(summed.get("sample"), summed.get("vanadium"));
  emit(normalized, "normalized.json");

  const DataArray by_theta = groupby(sample, "theta", theta_edges()).flatten();
  emit(by_theta, "theta_events.json");
  const DataArray theta_hist = histogram(by_theta, edges);
  emit(theta_hist, "theta_hist.json");

  emit_plot(normalized, out_dir / "plots", "normalized");
  emit_plot(theta_hist, out_dir / "plots", "theta_hist");
  files += 4;
  log << "wrote " << (out_dir / "plots").string() << "/{normalized,theta_hist}.{csv,svg}\n";
  log << "demo: " << pixels << " pixels, " << events << " events, seed " << seed << ", "
      << files << " files\n";
  return files;
}

} // namespace larr
