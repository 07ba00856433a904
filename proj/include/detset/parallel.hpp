#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace detset {

// results[i] = fn(i) for i in [0, count), computed by up to `jobs` workers
// pulling indices from a shared counter. Results are stored by index, so the
// output is identical for every worker count.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, unsigned jobs, Fn fn) {
  std::vector<std::optional<T>> slots(count);
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) slots[i].emplace(fn(i));
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto run = [&]() {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          slots[i].emplace(fn(i));
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    unsigned workers = jobs < count ? jobs : static_cast<unsigned>(count);
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }
  std::vector<T> out;
  out.reserve(count);
  for (std::optional<T>& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace detset
