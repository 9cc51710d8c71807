#include <atomic>
#include <mutex>
#include <thread>

#include "doctest.h"

#include "wordalign/pipeline.hpp"
#include "wordalign/sim_harness.hpp"

using namespace wordalign;

namespace {

// Fails every frame in `fail_frames`, otherwise delegates to a script.
class FlakyBackend : public AsrBackend {
 public:
  FlakyBackend(std::vector<AsrScriptEntry> script, std::vector<std::int64_t> fail_frames)
      : scripted_(std::move(script)), fail_(std::move(fail_frames)) {}

  CumulativeTranscript recognize_cumulative(const AudioStore& store,
                                            const AudioFrame& frame) override {
    for (auto f : fail_) {
      if (f == frame.index) throw BackendError("injected failure");
    }
    return scripted_.recognize_cumulative(store, frame);
  }

 private:
  ScriptedAsrBackend scripted_;
  std::vector<std::int64_t> fail_;
};

std::vector<CaptionEvent> collect(PipelineStats* stats_out, SampleSource& source,
                                  AudioStore& store, AsrBackend& backend,
                                  const PipelineConfig& config) {
  std::vector<CaptionEvent> events;
  std::mutex mutex;
  PipelineStats stats = run_pipeline(source, store, backend, config, [&](const CaptionEvent& e) {
    std::lock_guard lock(mutex);
    events.push_back(e);
  });
  if (stats_out) *stats_out = stats;
  return events;
}

}  // namespace

TEST_CASE("pipeline runs the scripted trace end to end") {
  MemorySource source(std::vector<float>(24000, 0.1f), 16000);  // 1.5 s
  AudioStore store(16000);
  ScriptedAsrBackend backend({{0, "We cho"}, {1, "We choose"}, {2, "We choose to go"}});

  PipelineConfig config;
  config.frame_interval_s = 0.5;

  PipelineStats stats;
  auto events = collect(&stats, source, store, backend, config);

  CHECK(stats.frames == 3);
  CHECK(stats.skipped_frames == 0);

  auto finals = fold_final_words(events);
  REQUIRE(finals.size() == 4);
  CHECK(finals[0].word == "We");
  CHECK(finals[1].word == "choose");
  CHECK(finals[2].word == "to");
  CHECK(finals[3].word == "go");
  CHECK(finals[1].start_s == doctest::Approx(0.25));
  CHECK(finals[1].end_s == doctest::Approx(1.0));

  // Non-silent audio: every final word is decorated.
  for (const auto& w : finals) {
    REQUIRE(w.loudness_dbfs.has_value());
    CHECK(w.style_scale >= 0.8);
  }

  // End-to-end reconstruction.
  std::string joined;
  for (const auto& w : finals) {
    if (!joined.empty()) joined += ' ';
    joined += w.word;
  }
  CHECK(joined == normalize("We choose to go"));

  CHECK(stats.latency_violations() == 0);
}

TEST_CASE("empty audio yields zero frames and zero events") {
  MemorySource source({}, 16000);
  AudioStore store(16000);
  ScriptedAsrBackend backend({});
  PipelineConfig config;
  auto events = collect(nullptr, source, store, backend, config);
  CHECK(events.empty());
}

TEST_CASE("backend failures skip frames and merge intervals") {
  MemorySource source(std::vector<float>(16000, 0.1f), 16000);  // 1 s, 4 frames
  AudioStore store(16000);
  FlakyBackend backend({{0, "to "}, {1, "to "}, {2, "to go "}, {3, "to go on "}}, {1});

  PipelineConfig config;
  config.frame_interval_s = 0.25;

  PipelineStats stats;
  auto events = collect(&stats, source, store, backend, config);
  CHECK(stats.frames == 4);
  CHECK(stats.skipped_frames == 1);

  auto finals = fold_final_words(events);
  REQUIRE(finals.size() == 3);
  CHECK(finals[1].word == "go");
  // Frame 1 [0.25, 0.5] skipped, frame 2's delta absorbs it.
  CHECK(finals[1].start_s == doctest::Approx(0.25));
  CHECK(finals[1].end_s == doctest::Approx(0.75));
}

TEST_CASE("concurrent recognizers still deliver in frame order") {
  const int frames = 40;
  MemorySource source(std::vector<float>(frames * 800, 0.1f), 8000);
  AudioStore store(8000);

  // Build a script that appends one word per frame.
  std::vector<AsrScriptEntry> script;
  std::string text;
  for (int i = 0; i < frames; ++i) {
    text += (i ? " w" : "w") + std::to_string(i);
    script.push_back({i, text});
  }
  ScriptedAsrBackend backend(script);

  PipelineConfig config;
  config.frame_interval_s = 0.1;
  config.asr_workers = 4;
  config.queue_capacity = 3;

  PipelineStats stats;
  auto events = collect(&stats, source, store, backend, config);
  CHECK(stats.frames == frames);

  auto finals = fold_final_words(events);
  REQUIRE(static_cast<int>(finals.size()) == frames);
  for (int i = 0; i < frames; ++i) {
    CHECK(finals[i].word == "w" + std::to_string(i));
  }
  // WordFinal starts strictly increase (no revisions in this run).
  for (std::size_t i = 1; i < finals.size(); ++i) {
    CHECK(finals[i].start_s > finals[i - 1].start_s);
  }
  CHECK(stats.latency_violations() == 0);
}

TEST_CASE("engine errors propagate out of the pipeline") {
  MemorySource source(std::vector<float>(8000, 0.1f), 8000);
  AudioStore store(8000);

  struct ThrowingBackend : AsrBackend {
    CumulativeTranscript recognize_cumulative(const AudioStore&, const AudioFrame&) override {
      throw std::runtime_error("unrecoverable");
    }
  } backend;

  PipelineConfig config;
  config.frame_interval_s = 0.25;
  CHECK_THROWS_AS(collect(nullptr, source, store, backend, config), std::runtime_error);
}
