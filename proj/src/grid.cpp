#include <omp.h>

#include <exception>
#include <stdexcept>

#include "cogrowth/walker.hpp"

namespace cogrowth {

std::vector<WalkRecord> run_grid_serial(const Presentation& presentation,
                                        std::span<const WalkParams> grid) {
  for (const auto& p : grid) p.validate();
  std::vector<WalkRecord> out;
  out.reserve(grid.size());
  for (const auto& p : grid) out.push_back(run_walk(presentation, p));
  return out;
}

std::vector<WalkRecord> run_grid(const Presentation& presentation, std::span<const WalkParams> grid,
                                 int threads) {
  for (const auto& p : grid) p.validate();
  std::vector<WalkRecord> out(grid.size());
  std::vector<std::exception_ptr> errors(grid.size());
  const auto n = static_cast<long long>(grid.size());
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();

  // Walks share only the immutable presentation.
#pragma omp parallel for schedule(dynamic, 1) num_threads(nthreads)
  for (long long i = 0; i < n; ++i) {
    try {
      out[i] = run_walk(presentation, grid[i]);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace cogrowth
