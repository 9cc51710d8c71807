#include "wordalign/pipeline.hpp"

#include <atomic>
#include <exception>
#include <thread>

namespace wordalign {

std::int64_t PipelineStats::latency_violations() const {
  std::int64_t violations = 0;
  for (std::size_t i = 1; i < timings.size(); ++i) {
    if (timings[i - 1].emitted_at > timings[i].consumed_at) ++violations;
  }
  return violations;
}

namespace {

struct FrameMessage {
  AudioFrame frame;
};

struct ResultMessage {
  FrameTranscript transcript;
};

}  // namespace

PipelineStats run_pipeline(SampleSource& source, AudioStore& store, AsrBackend& backend,
                           const PipelineConfig& config, const EventSink& sink,
                           EngineProbe probe) {
  if (config.asr_workers < 1) throw ConfigError("pipeline needs at least one ASR worker");
  if (config.queue_capacity < 1) throw ConfigError("queue capacity must be at least 1");
  BoundedQueue<FrameMessage> frame_queue(config.queue_capacity);
  BoundedQueue<ResultMessage> result_queue(config.queue_capacity);
  Sequencer<ResultMessage> sequencer(result_queue);

  PipelineStats stats;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto record_failure = [&](std::exception_ptr e) {
    std::lock_guard lock(failure_mutex);
    if (!failure) failure = e;
  };

  std::thread ingest_thread([&] {
    try {
      FrameReader reader(source, store, config.frame_interval_s);
      while (auto frame = reader.next_frame()) {
        if (config.pace) config.pace(frame->index);
        frame_queue.push({std::move(*frame)});
      }
    } catch (...) {
      record_failure(std::current_exception());
    }
    frame_queue.close();
  });

  std::atomic<int> workers_left{config.asr_workers};
  std::vector<std::thread> asr_threads;
  asr_threads.reserve(static_cast<std::size_t>(config.asr_workers));
  for (int w = 0; w < config.asr_workers; ++w) {
    asr_threads.emplace_back([&] {
      while (auto msg = frame_queue.pop()) {
        const AudioFrame& frame = msg->frame;
        FrameTranscript result;
        result.frame_index = frame.index;
        result.start_s = frame.start_s;
        result.end_s = frame.end_s;
        try {
          result.text = backend.recognize_cumulative(store, frame).text;
        } catch (const BackendError&) {
          result.text = std::nullopt;  // recoverable: skip-and-merge
        } catch (...) {
          record_failure(std::current_exception());
          result.text = std::nullopt;
        }
        sequencer.deliver(frame.index, ResultMessage{std::move(result)});
      }
      if (workers_left.fetch_sub(1) == 1) result_queue.close();
    });
  }

  SessionEngine engine(config.engine, &store, std::move(probe));
  try {
    while (auto msg = result_queue.pop()) {
      FrameTiming timing;
      timing.frame_index = msg->transcript.frame_index;
      timing.consumed_at = Clock::now();

      std::vector<CaptionEvent> events = engine.feed(msg->transcript);
      ++stats.frames;
      if (!msg->transcript.text) ++stats.skipped_frames;
      for (const CaptionEvent& e : events) {
        ++stats.events;
        if (sink) sink(e);
      }

      timing.emitted_at = Clock::now();
      stats.timings.push_back(timing);
    }
    for (const CaptionEvent& e : engine.finish()) {
      ++stats.events;
      if (sink) sink(e);
    }
  } catch (...) {
    record_failure(std::current_exception());
    frame_queue.close();
    result_queue.close();
  }

  ingest_thread.join();
  for (auto& t : asr_threads) t.join();
  if (failure) std::rethrow_exception(failure);
  return stats;
}

}  // namespace wordalign
