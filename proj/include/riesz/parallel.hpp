#pragma once

#include <Eigen/Core>

#include <exception>
#include <thread>
#include <vector>

namespace riesz {

/// Worker count from RIESZ_WORKERS, defaulting to every hardware thread.
int worker_count();

/// Runs body(i) for i in [0, count) on `worker_count()` threads with a static block split.
/// Callers write results into per-index slots. Blocks are contiguous and ascending, so rethrowing the
/// error of the lowest failing block keeps failures independent of the schedule.
template <typename Body>
void parallel_for(Eigen::Index count, Body&& body) {
  const Eigen::Index workers = std::min<Eigen::Index>(worker_count(), count);
  if (workers <= 1) {
    for (Eigen::Index i = 0; i < count; ++i)
      body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(workers));
  for (Eigen::Index w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      const Eigen::Index begin = count * w / workers;
      const Eigen::Index end = count * (w + 1) / workers;
      for (Eigen::Index i = begin; i < end; ++i) {
        try {
          body(i);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : threads)
    t.join();
  for (std::size_t w = 0; w < errors.size(); ++w)
    if (errors[w])
      std::rethrow_exception(errors[w]);
}

} // namespace riesz
