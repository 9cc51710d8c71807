#ifndef WORDALIGN_PIPELINE_HPP_
#define WORDALIGN_PIPELINE_HPP_

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "wordalign/asr_backend.hpp"
#include "wordalign/audio_ingest.hpp"
#include "wordalign/engine.hpp"
#include "wordalign/events.hpp"

namespace wordalign {

// Blocking bounded FIFO connecting pipeline stages; push blocks when full so
// a slow consumer backpressures the producer. close() wakes all waiters and
// makes pop() drain remaining items then return nullopt.
template <typename T>
class BoundedQueue {
 public:
  explicit BoundedQueue(std::size_t capacity) : capacity_(capacity) {}

  void push(T item) {
    std::unique_lock lock(mutex_);
    not_full_.wait(lock, [&] { return items_.size() < capacity_ || closed_; });
    if (closed_) return;  // producer raced with shutdown; drop
    items_.push_back(std::move(item));
    not_empty_.notify_one();
  }

  std::optional<T> pop() {
    std::unique_lock lock(mutex_);
    not_empty_.wait(lock, [&] { return !items_.empty() || closed_; });
    if (items_.empty()) return std::nullopt;
    T item = std::move(items_.front());
    items_.pop_front();
    not_full_.notify_one();
    return item;
  }

  void close() {
    std::lock_guard lock(mutex_);
    closed_ = true;
    not_empty_.notify_all();
    not_full_.notify_all();
  }

 private:
  std::size_t capacity_;
  std::deque<T> items_;
  bool closed_ = false;
  std::mutex mutex_;
  std::condition_variable not_empty_;
  std::condition_variable not_full_;
};

// Releases out-of-order (index, value) pairs in strictly increasing index
// order. Completions for future indices buffer until the gap fills.
template <typename T>
class Sequencer {
 public:
  explicit Sequencer(BoundedQueue<T>& out) : out_(out) {}

  void deliver(std::int64_t index, T value) {
    // Pushing under the lock keeps releases atomic: another worker cannot
    // interleave its own release between two in-order items. The downstream
    // queue is drained independently, so blocking here cannot deadlock.
    std::lock_guard lock(mutex_);
    buffer_.emplace(index, std::move(value));
    while (!buffer_.empty() && buffer_.begin()->first == next_) {
      out_.push(std::move(buffer_.begin()->second));
      buffer_.erase(buffer_.begin());
      ++next_;
    }
  }

 private:
  BoundedQueue<T>& out_;
  std::mutex mutex_;
  std::map<std::int64_t, T> buffer_;
  std::int64_t next_ = 0;
};

using Clock = std::chrono::steady_clock;

// Wall-clock observations backing the single-frame-lag contract: events for
// frame i must be emitted before frame i+1's transcript is consumed.
struct FrameTiming {
  std::int64_t frame_index = 0;
  Clock::time_point consumed_at;  // align stage dequeued the transcript
  Clock::time_point emitted_at;   // its caption events were handed out
};

struct PipelineStats {
  std::int64_t frames = 0;
  std::int64_t skipped_frames = 0;
  std::int64_t events = 0;
  std::vector<FrameTiming> timings;

  // Pairs (i, i+1) violating the single-frame-lag contract.
  std::int64_t latency_violations() const;
};

struct PipelineConfig {
  EngineConfig engine;
  double frame_interval_s = 0.25;
  int asr_workers = 1;
  std::size_t queue_capacity = 8;
  // Optional pacing for replay: called before ingesting each frame.
  std::function<void(std::int64_t frame_index)> pace;
};

using EventSink = std::function<void(const CaptionEvent&)>;

// Runs ingest -> ASR -> align+emit over three execution contexts joined by
// bounded queues. Returns once the source is drained and the tail flushed.
PipelineStats run_pipeline(SampleSource& source, AudioStore& store, AsrBackend& backend,
                           const PipelineConfig& config, const EventSink& sink,
                           EngineProbe probe = {});

}  // namespace wordalign

#endif  // WORDALIGN_PIPELINE_HPP_
