#ifndef WORDALIGN_DELTA_TRACKER_HPP_
#define WORDALIGN_DELTA_TRACKER_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wordalign/timeline.hpp"

namespace wordalign {

struct DeltaResult {
  std::string delta_text;                // curr[L..]
  std::optional<RevisionInfo> revision;  // present iff L < |prev|
};

// Longest common byte prefix, snapped back to a UTF-8 sequence start so the
// delta never begins mid-codepoint.
std::size_t common_prefix_chars(std::string_view prev, std::string_view curr);

DeltaResult compute_delta(std::string_view prev, std::string_view curr);

// Attributes a delta to its frame interval, extended left over any pending
// (skipped or revision-pooled) interval. Empty delta text yields nothing.
std::optional<DeltaSegment> attribute_interval(const std::string& delta_text,
                                               const std::optional<RevisionInfo>& revision,
                                               const AudioFrame& frame,
                                               const std::optional<TimeSpan>& pending_interval);

struct RetractionSet {
  std::vector<std::size_t> word_indices;  // into the emitted-word list, ascending
  std::optional<TimeSpan> pooled_span;    // union of the retracted words' spans
};

// Emitted words whose text lies fully or partially in the revision's
// invalidated suffix of `prev_text`. Words must appear in `prev_text` in
// order; their character ranges are recovered by scanning.
RetractionSet compute_retractions(std::string_view prev_text, const RevisionInfo& revision,
                                  const std::vector<WordSegment>& live_words);

}  // namespace wordalign

#endif  // WORDALIGN_DELTA_TRACKER_HPP_
