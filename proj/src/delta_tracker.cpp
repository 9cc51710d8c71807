#include "wordalign/delta_tracker.hpp"

#include <algorithm>

namespace wordalign {

std::size_t common_prefix_chars(std::string_view prev, std::string_view curr) {
  std::size_t n = std::min(prev.size(), curr.size());
  std::size_t i = 0;
  while (i < n && prev[i] == curr[i]) ++i;
  // Back off UTF-8 continuation bytes so the split lands on a sequence start.
  while (i > 0 && i < curr.size() && (static_cast<unsigned char>(curr[i]) & 0xC0) == 0x80) --i;
  return i;
}

DeltaResult compute_delta(std::string_view prev, std::string_view curr) {
  std::size_t lcp = common_prefix_chars(prev, curr);
  DeltaResult result;
  result.delta_text = std::string(curr.substr(lcp));
  if (lcp < prev.size()) {
    result.revision = RevisionInfo{lcp, std::string(prev.substr(lcp))};
  }
  return result;
}

std::optional<DeltaSegment> attribute_interval(const std::string& delta_text,
                                               const std::optional<RevisionInfo>& revision,
                                               const AudioFrame& frame,
                                               const std::optional<TimeSpan>& pending_interval) {
  if (delta_text.empty()) return std::nullopt;
  DeltaSegment seg;
  seg.frame_index = frame.index;
  seg.start_s = pending_interval ? std::min(pending_interval->start_s, frame.start_s)
                                 : frame.start_s;
  seg.end_s = frame.end_s;
  seg.text = delta_text;
  seg.revision = revision;
  return seg;
}

RetractionSet compute_retractions(std::string_view prev_text, const RevisionInfo& revision,
                                  const std::vector<WordSegment>& live_words) {
  RetractionSet out;
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < live_words.size(); ++i) {
    const std::string& w = live_words[i].word;
    std::size_t pos = prev_text.find(w, cursor);
    if (pos == std::string_view::npos) {
      // Word text no longer locatable: it can only live in the replaced suffix.
      pos = prev_text.size();
    }
    std::size_t end = std::min(pos + w.size(), prev_text.size());
    cursor = end;
    if (end > revision.lcp_chars) {
      out.word_indices.push_back(i);
      const TimeSpan span = live_words[i].span();
      if (!out.pooled_span) {
        out.pooled_span = span;
      } else {
        out.pooled_span->start_s = std::min(out.pooled_span->start_s, span.start_s);
        out.pooled_span->end_s = std::max(out.pooled_span->end_s, span.end_s);
      }
    }
  }
  return out;
}

}  // namespace wordalign
