#pragma once

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace wcfair::harness {

template <typename T>
void ordered_parallel(std::size_t count, std::size_t workers,
                      const std::function<T(std::size_t)>& task,
                      const std::function<void(std::size_t, T&)>& sink) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      T value = task(i);
      sink(i, value);
    }
    return;
  }
  std::vector<std::optional<T>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::vector<bool> ready(count, false);
  std::mutex mutex;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      std::optional<T> value;
      std::exception_ptr error;
      try {
        value.emplace(task(i));
      } catch (...) {
        error = std::current_exception();
      }
      {
        std::lock_guard<std::mutex> lock(mutex);
        slots[i] = std::move(value);
        errors[i] = error;
        ready[i] = true;
      }
      cv.notify_all();
    }
  };
  std::vector<std::thread> pool;
  const std::size_t n = std::min(workers, count);
  pool.reserve(n);
  for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);

  std::exception_ptr first_error;
  for (std::size_t i = 0; i < count; ++i) {
    std::unique_lock<std::mutex> lock(mutex);
    cv.wait(lock, [&] { return ready[i]; });
    std::optional<T> value = std::move(slots[i]);
    std::exception_ptr error = errors[i];
    lock.unlock();
    if (!error) {
      try {
        sink(i, *value);
      } catch (...) {
        error = std::current_exception();
      }
    }
    if (error) {
      first_error = error;
      next.store(count);
      break;
    }
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace wcfair::harness
