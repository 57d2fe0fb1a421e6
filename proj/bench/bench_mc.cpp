// Serial reference vs OpenMP kernels on the same configuration. Results must
// agree exactly; only the wall time differs.
//
//   bench_mc [--samples N] [--workers W] [--repeats R]

#include <chrono>
#include <cstdio>
#include <functional>

#include <omp.h>
#include <CLI11.hpp>

#include "kernels.hpp"
#include "maxmean/mc/harness.hpp"
#include "maxmean/mc/reference.hpp"

using namespace maxmean;
using namespace maxmean::mc;

namespace {

double best_of(int repeats, const std::function<void()>& f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

template <typename T>
void row(const char* name, int repeats, const std::function<T()>& serial, const std::function<T()>& parallel) {
  T a{}, b{};
  const double ts = best_of(repeats, [&] { a = serial(); });
  const double tp = best_of(repeats, [&] { b = parallel(); });
  std::printf("%-22s %10.4f %10.4f %8.2fx  %s\n", name, ts, tp, ts / tp, a == b ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo kernel benchmark"};
  SimConfig cfg;
  cfg.samples = 200'000;
  cfg.workers = 8;
  int repeats = 3;
  app.add_option("--samples", cfg.samples);
  app.add_option("--workers", cfg.workers);
  app.add_option("--repeats", repeats);
  CLI11_PARSE(app, argc, argv);
  cfg.horizon = 500;

  std::printf("samples %lld, workers %d, threads %d\n", static_cast<long long>(cfg.samples), cfg.workers,
              omp_get_max_threads());
  std::printf("%-22s %10s %10s %9s\n", "kernel", "serial s", "omp s", "speedup");

  const double grid[] = {1.2, 2.0, 4.0};
  row<std::vector<std::int64_t>>(
      "running_max_counts", repeats, [&] { return reference::running_max_counts(cfg, 200, 0.0, grid, 1); },
      [&] { return kernels::running_max_counts(cfg, 200, 0.0, grid, 1); });
  row<std::vector<double>>(
      "running_max_values", repeats, [&] { return reference::simulate_running_max(cfg, 50, 0.5); },
      [&] { return kernels::running_max_values(cfg, 50, 0.5); });
  const ruin::RiskModel m{1.0, 0.0};
  row<std::int64_t>(
      "ruin_count", repeats, [&] { return reference::ruin_count(cfg, m); },
      [&] { return kernels::ruin_count(cfg, m.premium_rate(), m.capital()); });

  // Different stream layouts: compare time only.
  auto tail = cfg;
  tail.samples = std::max<std::int64_t>(1, cfg.samples / 100);
  tail.trajectory_multiple = 50;
  const double ts = best_of(repeats, [&] { reference::simulate_scaled_tail_max(tail, 1000); });
  const double tp = best_of(repeats, [&] { kernels::scaled_tail_max(tail, 1000); });
  std::printf("%-22s %10.4f %10.4f %8.2fx  (law only)\n", "scaled_tail_max", ts, tp, ts / tp);
  return 0;
}
