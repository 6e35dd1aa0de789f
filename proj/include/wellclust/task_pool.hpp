#pragma once

#include <condition_variable>
#include <cstddef>
#include <deque>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace wellclust {

/// Fixed-width worker pool. Tasks may submit further tasks; wait_idle()
/// blocks until the queue is empty and nothing is running, then rethrows
/// the first exception captured from any task.
class TaskPool {
 public:
  explicit TaskPool(unsigned num_workers);
  ~TaskPool();

  TaskPool(const TaskPool&) = delete;
  TaskPool& operator=(const TaskPool&) = delete;

  void submit(std::function<void()> task);
  void wait_idle();

  unsigned width() const { return static_cast<unsigned>(workers_.size()); }

 private:
  void worker_loop();

  std::mutex mutex_;
  std::condition_variable work_available_;
  std::condition_variable all_done_;
  std::deque<std::function<void()>> queue_;
  std::size_t outstanding_ = 0;  // queued + running
  bool shutting_down_ = false;
  std::exception_ptr first_error_;
  std::vector<std::thread> workers_;
};

}  // namespace wellclust
