// Serial reference vs OpenMP kernels: walk grid and reduced-word enumeration.
//
//   bench_kernels [steps-per-walk] [walks] [enum-max-len]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "cogrowth/oracle.hpp"
#include "cogrowth/presentation.hpp"
#include "cogrowth/walker.hpp"

using namespace cogrowth;

namespace {

template <typename F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const std::uint64_t steps = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 10'000'000;
  const int walks = argc > 2 ? std::atoi(argv[2]) : 4;
  const std::size_t enum_len = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 14;

  std::printf("threads available: %d\n", omp_get_max_threads());

  const Presentation f = builtin_presentation(Preset::thompson_f);
  std::vector<WalkParams> grid;
  for (int i = 0; i < walks; ++i) {
    WalkParams p;
    p.alpha = 3.0 + 10.0 * (i % 3);
    p.beta = 0.28 + 0.01 * (i % 4);
    p.steps = steps;
    p.segments = 10;
    p.seed = 7;
    p.stream = static_cast<std::uint64_t>(i);
    grid.push_back(p);
  }

  std::vector<WalkRecord> serial;
  std::vector<WalkRecord> parallel;
  const double ts = seconds([&] { serial = run_grid_serial(f, grid); });
  const double tp = seconds([&] { parallel = run_grid(f, grid); });
  bool same = serial.size() == parallel.size();
  for (std::size_t i = 0; same && i < serial.size(); ++i) {
    same = serial[i].segment_histograms == parallel[i].segment_histograms;
  }
  const double total = static_cast<double>(steps) * walks;
  std::printf("walk grid  F x%d, %llu steps each\n", walks, static_cast<unsigned long long>(steps));
  std::printf("  serial   %8.3f s  %7.2f ns/step\n", ts, 1e9 * ts / total);
  std::printf("  openmp   %8.3f s  %7.2f ns/step  speedup %.2fx  identical=%s\n", tp, 1e9 * tp / total,
              ts / tp, same ? "yes" : "NO");

  const WordProblemSolver z2 = AbelianSolver(2);
  ExactTable es;
  ExactTable ep;
  const double te = seconds([&] { es = enumerate_reduced_cogrowth_serial(z2, enum_len); });
  const double tq = seconds([&] { ep = enumerate_reduced_cogrowth(z2, enum_len); });
  std::printf("enumerate  Z^2 reduced words to length %zu\n", enum_len);
  std::printf("  serial   %8.3f s\n", te);
  std::printf("  openmp   %8.3f s  speedup %.2fx  identical=%s\n", tq, te / tq,
              es.dense() == ep.dense() ? "yes" : "NO");
  return same && es.dense() == ep.dense() ? 0 : 1;
}
