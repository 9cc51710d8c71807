#ifndef WORDALIGN_ALIGNER_HPP_
#define WORDALIGN_ALIGNER_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wordalign/events.hpp"
#include "wordalign/timeline.hpp"

namespace wordalign {

struct AlignerOptions {
  // Keep the final reference word in progress: its fragments go to
  // unmatched_tail instead of forming a word. Used while the transcript's
  // last token may still grow.
  bool hold_last_word = false;
  bool case_insensitive = false;
  // total_cost above ceiling_ratio * (total reference characters) marks the
  // result low-confidence. Never a hard failure.
  double cost_ceiling_ratio = 0.5;
};

// Grouping of fragments under the reference transcript's word boundaries.
// words[i].fragments holds indices into the input fragment list; the
// unmatched tail is always a suffix of the input.
struct AlignmentResult {
  std::vector<WordSegment> words;
  long total_cost = 0;
  std::vector<SubSegment> unmatched_tail;
  bool low_confidence = false;
  std::uint64_t dp_cell_updates = 0;  // relaxations performed by the DP

  // Decoration of the in-progress tail, filled by the pipeline.
  LoudnessDbfs tail_loudness_dbfs;
  double tail_style_scale = 1.0;
};

// Levenshtein distance over bytes, optionally case-folded.
long levenshtein(std::string_view a, std::string_view b, bool case_insensitive = false);

// Groups contiguous runs of fragments so each run's concatenation matches one
// reference word, minimizing summed edit distance. Each word consumes at
// least one fragment (when enough fragments exist); ties prefer the
// lexicographically smallest group-size vector. Empty reference with
// non-empty fragments throws AlignmentError.
AlignmentResult align(std::span<const SubSegment> fragments,
                      const std::vector<std::string>& reference_words,
                      const AlignerOptions& options = {});

// Exhaustive enumeration of all contiguous partitions; the testing oracle for
// align() and the quadratic-style baseline it improves on. Refuses inputs
// with more than 12 fragments.
AlignmentResult brute_force_align(std::span<const SubSegment> fragments,
                                  const std::vector<std::string>& reference_words,
                                  const AlignerOptions& options = {});

// Diffs two alignment snapshots of one session into caption events:
// WordFinal for new stable words, Revision for words whose text or span
// changed, PartialTail when the in-progress tail changed.
std::vector<CaptionEvent> emit_updates(const AlignmentResult& previous,
                                       const AlignmentResult& current,
                                       const std::string& session, std::int64_t frame);

}  // namespace wordalign

#endif  // WORDALIGN_ALIGNER_HPP_
