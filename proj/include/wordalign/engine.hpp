#ifndef WORDALIGN_ENGINE_HPP_
#define WORDALIGN_ENGINE_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wordalign/aligner.hpp"
#include "wordalign/audio_store.hpp"
#include "wordalign/delta_tracker.hpp"
#include "wordalign/events.hpp"
#include "wordalign/loudness.hpp"
#include "wordalign/subsplitter.hpp"
#include "wordalign/timeline.hpp"

namespace wordalign {

struct EngineConfig {
  SplitStrategy split = SplitStrategy::kLinear;
  TokenizerMode tokenizer = TokenizerMode::kWhitespace;
  Segmenter segmenter;  // required for kPluggableSegmenter
  LoudnessMap loudness;
  bool case_insensitive = false;
  double cost_ceiling_ratio = 0.5;
  std::string session = "default";
};

// Per-frame recognizer outcome handed to the engine in strict frame order.
// text is absent when the backend failed and the frame was skipped.
struct FrameTranscript {
  std::int64_t frame_index = 0;
  double start_s = 0.0;
  double end_s = 0.0;
  std::optional<std::string> text;
};

// Observation hooks for tests and tooling; all optional.
struct EngineProbe {
  std::function<void(const DeltaSegment&)> on_delta;
  std::function<void(const std::vector<SubSegment>&)> on_subsegments;
  std::function<void(const AlignmentResult&)> on_alignment;
};

// Owner of all mutable per-session state: the previous hypothesis, the live
// (un-finalized) fragments, the finalized words, and any pending interval
// from skipped frames or retracted revisions. Strictly single-threaded.
//
// Each frame: diff the cumulative hypothesis, attribute the new text to the
// frame's interval, sub-split it, re-align all live fragments against the
// un-finalized suffix of the newest transcript, freeze completed words, and
// diff the session snapshot into caption events.
class SessionEngine {
 public:
  SessionEngine(EngineConfig config, const AudioStore* store, EngineProbe probe = {});

  std::vector<CaptionEvent> feed(const FrameTranscript& frame);

  // End of stream: the in-progress tail is aligned without holding the last
  // word, finalizing everything.
  std::vector<CaptionEvent> finish();

  const std::vector<WordSegment>& final_words() const { return snapshot_.words; }
  const std::string& transcript() const { return prev_text_; }
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }
  std::uint64_t total_dp_updates() const { return total_dp_updates_; }

  // Structural invariant: finalized words are exactly the leading tokens of
  // the newest transcript and live fragments concatenate to the rest.
  // Throws AlignmentError when violated.
  void check_consistency() const;

 private:
  struct LiveFragment {
    SubSegment seg;
    std::uint64_t id = 0;
    std::size_t char_begin = 0;  // byte range in the current hypothesis
    std::size_t char_end = 0;
  };

  struct FinalizedWord {
    WordSegment word;
    std::size_t char_begin = 0;
    std::size_t char_end = 0;
  };

  std::vector<TokenSpan> tokenize_current(std::string_view text) const;
  void merge_pending(const TimeSpan& span);
  void merge_revised_region(const TimeSpan& span);
  void apply_revised_region(std::vector<CaptionEvent>& events);
  std::size_t apply_revision(std::size_t lcp, const std::vector<TokenSpan>& tokens);
  WordSegment decorate_word(WordSegment word) const;
  std::vector<CaptionEvent> run_alignment(const std::vector<TokenSpan>& tokens, bool hold_last,
                                          std::int64_t frame_index);
  void rebuild_snapshot(const AlignmentResult& alignment);

  EngineConfig config_;
  const AudioStore* store_;
  EngineProbe probe_;

  std::string prev_text_;
  std::vector<FinalizedWord> finalized_;
  std::vector<LiveFragment> live_;
  std::optional<TimeSpan> pending_interval_;
  // Span of retracted finalized words not yet re-covered by new finals; words
  // finalized over it are revisions from the consumer's point of view.
  std::optional<TimeSpan> revised_region_;
  std::uint64_t next_fragment_id_ = 1;
  std::uint64_t total_dp_updates_ = 0;
  std::int64_t last_frame_index_ = -1;
  bool finished_ = false;

  AlignmentResult snapshot_;  // finalized words + current tail, decorated
  std::vector<std::string> diagnostics_;
};

}  // namespace wordalign

#endif  // WORDALIGN_ENGINE_HPP_
