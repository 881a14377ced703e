// Serial vs OpenMP timings for the enumeration kernels.
// Usage: bench_kernels [threads]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include "kdscope/bases.hpp"
#include "kdscope/kernels.hpp"

using namespace kdscope;
using namespace kdscope::kernels;

namespace {

double seconds(const std::function<void()>& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-34s %10.4f %10.4f %8.2fx\n", name, serial, parallel, serial / parallel);
}

std::vector<CellKey> keys_for(int d) {
  std::vector<CellKey> keys;
  for (Mask s = 1; s <= full_mask(d); ++s)
    for (Mask t = 1; t <= full_mask(d); ++t) keys.push_back({s, t});
  return keys;
}

}  // namespace

int main(int argc, char** argv) {
  const int threads = argc > 1 ? std::atoi(argv[1]) : omp_get_max_threads();
  std::printf("threads: %d\n", threads);
  std::printf("%-34s %10s %10s %9s\n", "kernel", "serial[s]", "omp[s]", "speedup");

  for (int d : {7, 11}) {
    const auto u = dft(d).matrix();  // prime: full scan, no early exit
    const double a = seconds([&] { first_vanishing_minor_serial(u, 1e-10); });
    const double b = seconds([&] { first_vanishing_minor_omp(u, 1e-10, threads); });
    char name[64];
    std::snprintf(name, sizeof name, "minor scan dft(%d)", d);
    row(name, a, b);
  }

  for (int d : {6, 7}) {
    const auto u = dft(d);
    const auto keys = keys_for(d);
    const double a = seconds([&] { scan_supports_serial(u, keys, {}); });
    const double b = seconds([&] { scan_supports_omp(u, keys, {}, threads); });
    char name[64];
    std::snprintf(name, sizeof name, "support scan dft(%d), %zu cells", d, keys.size());
    row(name, a, b);
  }

  {
    const auto u = dft(5);
    const auto all = keys_for(5);
    const auto sup = scan_supports_serial(u, all, {});
    std::vector<CellKey> exact;
    for (std::size_t i = 0; i < all.size(); ++i)
      if (sup[i].exact(all[i])) exact.push_back(all[i]);
    SearchConfig cfg;
    cfg.restarts = 10;
    const double a = seconds([&] { classify_cells_serial(u, exact, cfg, {}); });
    const double b = seconds([&] { classify_cells_omp(u, exact, cfg, {}, threads); });
    char name[64];
    std::snprintf(name, sizeof name, "cell search dft(5), %zu cells", exact.size());
    row(name, a, b);
  }
  return 0;
}
