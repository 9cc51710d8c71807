#include "wordalign/subsplitter.hpp"

namespace wordalign {

std::vector<TimedToken> split_delta(const DeltaSegment& delta, SplitStrategy strategy,
                                    TokenizerMode mode, const Segmenter* segmenter) {
  std::vector<TokenSpan> tokens = tokenize_with_offsets(delta.text, mode, segmenter);
  std::vector<TimedToken> out;
  if (tokens.empty()) return out;

  const std::size_t k = tokens.size();
  const double dt = delta.end_s - delta.start_s;

  std::size_t total_chars = 0;
  for (const auto& t : tokens) total_chars += t.token.size();

  out.reserve(k);
  double cursor = delta.start_s;
  for (std::size_t i = 0; i < k; ++i) {
    TimedToken tt;
    tt.token = tokens[i].token;
    tt.char_begin = tokens[i].begin;
    tt.char_end = tokens[i].end;
    tt.start_s = cursor;
    if (i + 1 == k) {
      tt.end_s = delta.end_s;  // remainder goes to the last token
    } else if (strategy == SplitStrategy::kLinear) {
      tt.end_s = cursor + dt / static_cast<double>(k);
    } else {
      tt.end_s = cursor + dt * (static_cast<double>(tokens[i].token.size()) /
                                static_cast<double>(total_chars));
    }
    cursor = tt.end_s;
    out.push_back(std::move(tt));
  }
  return out;
}

static std::vector<SubSegment> to_subsegments(const DeltaSegment& delta,
                                              const std::vector<TimedToken>& tokens) {
  std::vector<SubSegment> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    out.push_back({t.token, t.start_s, t.end_s, delta.frame_index});
  }
  return out;
}

std::vector<SubSegment> split_linear(const DeltaSegment& delta, TokenizerMode mode,
                                     const Segmenter* segmenter) {
  return to_subsegments(delta, split_delta(delta, SplitStrategy::kLinear, mode, segmenter));
}

std::vector<SubSegment> split_char_weighted(const DeltaSegment& delta, TokenizerMode mode,
                                            const Segmenter* segmenter) {
  return to_subsegments(delta, split_delta(delta, SplitStrategy::kCharWeighted, mode, segmenter));
}

}  // namespace wordalign
