#include "wellclust/task_pool.hpp"

#include <algorithm>
#include <utility>

namespace wellclust {

TaskPool::TaskPool(unsigned num_workers) {
  num_workers = std::max(1u, num_workers);
  workers_.reserve(num_workers);
  for (unsigned i = 0; i < num_workers; ++i) {
    workers_.emplace_back([this] { worker_loop(); });
  }
}

TaskPool::~TaskPool() {
  {
    std::unique_lock lock(mutex_);
    shutting_down_ = true;
  }
  work_available_.notify_all();
  for (auto& w : workers_) w.join();
}

void TaskPool::submit(std::function<void()> task) {
  {
    std::unique_lock lock(mutex_);
    queue_.push_back(std::move(task));
    ++outstanding_;
  }
  work_available_.notify_one();
}

void TaskPool::wait_idle() {
  std::unique_lock lock(mutex_);
  all_done_.wait(lock, [this] { return outstanding_ == 0; });
  if (first_error_) {
    auto err = std::exchange(first_error_, nullptr);
    std::rethrow_exception(err);
  }
}

void TaskPool::worker_loop() {
  for (;;) {
    std::function<void()> task;
    {
      std::unique_lock lock(mutex_);
      work_available_.wait(lock, [this] { return shutting_down_ || !queue_.empty(); });
      if (queue_.empty()) return;  // shutting down
      task = std::move(queue_.front());
      queue_.pop_front();
    }
    try {
      task();
    } catch (...) {
      std::unique_lock lock(mutex_);
      if (!first_error_) first_error_ = std::current_exception();
    }
    {
      std::unique_lock lock(mutex_);
      if (--outstanding_ == 0) all_done_.notify_all();
    }
  }
}

}  // namespace wellclust
