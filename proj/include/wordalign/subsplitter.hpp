#ifndef WORDALIGN_SUBSPLITTER_HPP_
#define WORDALIGN_SUBSPLITTER_HPP_

#include <vector>

#include "wordalign/timeline.hpp"

namespace wordalign {

enum class SplitStrategy {
  kLinear,        // every token gets duration / k
  kCharWeighted,  // token durations proportional to character counts
};

// A sub-split token with its time span and byte range inside the delta text.
struct TimedToken {
  std::string token;
  double start_s = 0.0;
  double end_s = 0.0;
  std::size_t char_begin = 0;  // offsets within the delta's text
  std::size_t char_end = 0;
};

// Divides the delta's interval among its tokens. Spans are chained
// (sub[i+1].start_s == sub[i].end_s bit-exactly) and the last token absorbs
// the floating-point remainder so the delta's right edge is preserved.
// An all-whitespace delta yields an empty list (caller drops it).
std::vector<TimedToken> split_delta(const DeltaSegment& delta, SplitStrategy strategy,
                                    TokenizerMode mode = TokenizerMode::kWhitespace,
                                    const Segmenter* segmenter = nullptr);

std::vector<SubSegment> split_linear(const DeltaSegment& delta,
                                     TokenizerMode mode = TokenizerMode::kWhitespace,
                                     const Segmenter* segmenter = nullptr);

std::vector<SubSegment> split_char_weighted(const DeltaSegment& delta,
                                            TokenizerMode mode = TokenizerMode::kWhitespace,
                                            const Segmenter* segmenter = nullptr);

}  // namespace wordalign

#endif  // WORDALIGN_SUBSPLITTER_HPP_
