#include "wordalign/engine.hpp"

#include <algorithm>
#include <cassert>

namespace wordalign {

SessionEngine::SessionEngine(EngineConfig config, const AudioStore* store, EngineProbe probe)
    : config_(std::move(config)), store_(store), probe_(std::move(probe)) {
  config_.loudness.validate();
  if (config_.tokenizer == TokenizerMode::kPluggableSegmenter && !config_.segmenter) {
    throw ConfigError("pluggable-segmenter mode requested but no segmenter is registered");
  }
}

std::vector<TokenSpan> SessionEngine::tokenize_current(std::string_view text) const {
  return tokenize_with_offsets(text, config_.tokenizer,
                               config_.segmenter ? &config_.segmenter : nullptr);
}

void SessionEngine::merge_pending(const TimeSpan& span) {
  if (!pending_interval_) {
    pending_interval_ = span;
  } else {
    pending_interval_->start_s = std::min(pending_interval_->start_s, span.start_s);
    pending_interval_->end_s = std::max(pending_interval_->end_s, span.end_s);
  }
}

void SessionEngine::merge_revised_region(const TimeSpan& span) {
  if (!revised_region_) {
    revised_region_ = span;
  } else {
    revised_region_->start_s = std::min(revised_region_->start_s, span.start_s);
    revised_region_->end_s = std::max(revised_region_->end_s, span.end_s);
  }
}

// Words finalized over speech whose earlier words were retracted must reach
// consumers as revisions even when the retraction happened frames ago.
void SessionEngine::apply_revised_region(std::vector<CaptionEvent>& events) {
  if (!revised_region_) return;
  for (CaptionEvent& e : events) {
    if (e.kind == EventKind::kPartialTail) continue;
    if (!revised_region_) break;
    if (e.start_s < revised_region_->end_s && revised_region_->start_s < e.end_s) {
      e.kind = EventKind::kRevision;
    }
    if (e.end_s >= revised_region_->end_s - kTimeEpsilon) {
      revised_region_.reset();
    } else if (e.end_s > revised_region_->start_s) {
      revised_region_->start_s = e.end_s;
    }
  }
}

// Unwinds live fragments and finalized words invalidated by a revision whose
// common prefix is `lcp` bytes. Returns the byte position the replacement
// text starts at; every removed span is pooled into pending_interval_ so the
// replacement tokens are re-timed over the original speech.
std::size_t SessionEngine::apply_revision(std::size_t lcp, const std::vector<TokenSpan>& tokens) {
  std::size_t cut = lcp;
  bool changed = true;
  while (changed) {
    changed = false;
    while (!live_.empty() && live_.back().char_end > cut) {
      merge_pending(live_.back().seg.span());
      cut = std::min(cut, live_.back().char_begin);
      live_.pop_back();
      changed = true;
    }
    while (!finalized_.empty() && finalized_.back().char_end > cut) {
      merge_pending(finalized_.back().word.span());
      merge_revised_region(finalized_.back().word.span());
      cut = std::min(cut, finalized_.back().char_begin);
      finalized_.pop_back();
      changed = true;
    }
    if (!changed && !finalized_.empty()) {
      // The surviving prefix must still end on a token boundary of the new
      // hypothesis; a word the revision extended (e.g. "I" -> "Ice") has to
      // be retracted even though the common prefix covers it.
      std::size_t boundary = finalized_.back().char_end;
      for (const TokenSpan& t : tokens) {
        if (t.begin >= boundary) break;
        if (t.end > boundary) {
          merge_pending(finalized_.back().word.span());
          merge_revised_region(finalized_.back().word.span());
          cut = std::min(cut, finalized_.back().char_begin);
          finalized_.pop_back();
          changed = true;
          break;
        }
      }
    }
  }
  return cut;
}

WordSegment SessionEngine::decorate_word(WordSegment word) const {
  if (store_ != nullptr && word.end_s > word.start_s) {
    return decorate(std::move(word), *store_, config_.loudness);
  }
  word.loudness_dbfs = std::nullopt;
  word.style_scale = style_scale(std::nullopt, config_.loudness);
  return word;
}

std::vector<CaptionEvent> SessionEngine::run_alignment(const std::vector<TokenSpan>& tokens,
                                                       bool hold_last,
                                                       std::int64_t frame_index) {
  AlignmentResult previous = snapshot_;

  if (live_.empty()) {
    // Nothing to align, but a revision may have retracted finalized words.
    rebuild_snapshot(AlignmentResult{});
    auto events = emit_updates(previous, snapshot_, config_.session, frame_index);
    apply_revised_region(events);
    return events;
  }

  if (tokens.size() <= finalized_.size()) {
    throw AlignmentError("live fragments with no un-finalized reference words");
  }

  std::vector<std::string> reference;
  reference.reserve(tokens.size() - finalized_.size());
  for (std::size_t i = finalized_.size(); i < tokens.size(); ++i) {
    reference.push_back(tokens[i].token);
  }

  std::vector<SubSegment> fragments;
  fragments.reserve(live_.size());
  for (const auto& lf : live_) fragments.push_back(lf.seg);

  AlignerOptions opts;
  opts.hold_last_word = hold_last && reference.size() >= 1;
  opts.case_insensitive = config_.case_insensitive;
  opts.cost_ceiling_ratio = config_.cost_ceiling_ratio;

  AlignmentResult result = align(fragments, reference, opts);
  total_dp_updates_ += result.dp_cell_updates;
  if (probe_.on_alignment) probe_.on_alignment(result);

  // Freeze completed words: rewrite fragment indices to stable ids and record
  // the token ranges they consume in the hypothesis.
  for (std::size_t j = 0; j < result.words.size(); ++j) {
    const TokenSpan& token = tokens[finalized_.size()];
    WordSegment word = result.words[j];
    std::vector<std::uint64_t> ids;
    ids.reserve(word.fragments.size());
    for (std::uint64_t idx : word.fragments) ids.push_back(live_[idx].id);
    word.fragments = std::move(ids);
    finalized_.push_back({decorate_word(std::move(word)), token.begin, token.end});
  }

  std::size_t consumed = live_.size() - result.unmatched_tail.size();
  live_.erase(live_.begin(), live_.begin() + static_cast<std::ptrdiff_t>(consumed));

  rebuild_snapshot(result);
  auto events = emit_updates(previous, snapshot_, config_.session, frame_index);
  apply_revised_region(events);
  return events;
}

void SessionEngine::rebuild_snapshot(const AlignmentResult& alignment) {
  snapshot_.words.clear();
  snapshot_.words.reserve(finalized_.size());
  for (const auto& fw : finalized_) snapshot_.words.push_back(fw.word);
  snapshot_.total_cost = alignment.total_cost;
  snapshot_.low_confidence = alignment.low_confidence;
  snapshot_.dp_cell_updates = alignment.dp_cell_updates;

  snapshot_.unmatched_tail.clear();
  snapshot_.unmatched_tail.reserve(live_.size());
  for (const auto& lf : live_) snapshot_.unmatched_tail.push_back(lf.seg);

  snapshot_.tail_loudness_dbfs = std::nullopt;
  snapshot_.tail_style_scale = style_scale(std::nullopt, config_.loudness);
  if (!live_.empty() && store_ != nullptr) {
    double t0 = live_.front().seg.start_s;
    double t1 = live_.back().seg.end_s;
    if (t1 > t0) {
      std::vector<float> samples = store_->slice(t0, t1);
      if (!samples.empty()) {
        snapshot_.tail_loudness_dbfs = rms_dbfs(samples);
        snapshot_.tail_style_scale = style_scale(snapshot_.tail_loudness_dbfs, config_.loudness);
      }
    }
  }
}

std::vector<CaptionEvent> SessionEngine::feed(const FrameTranscript& frame) {
  if (finished_) throw AlignmentError("feed() after finish()");
  if (frame.frame_index <= last_frame_index_) {
    throw AlignmentError("frames must arrive in strictly increasing order");
  }
  last_frame_index_ = frame.frame_index;

  if (!frame.text) {
    // Backend failure: keep the timeline contiguous by handing this frame's
    // interval to the next delta.
    merge_pending({frame.start_s, frame.end_s});
    return {};
  }

  const std::string& curr = *frame.text;
  std::vector<TokenSpan> tokens = tokenize_current(curr);
  DeltaResult delta = compute_delta(prev_text_, curr);

  std::size_t delta_from;
  if (delta.revision) {
    delta_from = apply_revision(delta.revision->lcp_chars, tokens);
  } else {
    delta_from = prev_text_.size();
  }
  std::string delta_text = curr.substr(delta_from);

  if (!delta_text.empty()) {
    AudioFrame frame_stub;
    frame_stub.index = frame.frame_index;
    frame_stub.start_s = frame.start_s;
    frame_stub.end_s = frame.end_s;
    std::optional<DeltaSegment> seg =
        attribute_interval(delta_text, delta.revision, frame_stub, pending_interval_);
    if (seg) {
      std::vector<TimedToken> split =
          split_delta(*seg, config_.split, config_.tokenizer,
                      config_.segmenter ? &config_.segmenter : nullptr);
      if (split.empty()) {
        diagnostics_.push_back("frame " + std::to_string(frame.frame_index) +
                               ": whitespace-only delta dropped");
      } else {
        if (probe_.on_delta) probe_.on_delta(*seg);
        std::vector<SubSegment> subs;
        subs.reserve(split.size());
        for (const TimedToken& t : split) {
          LiveFragment lf;
          lf.seg = {t.token, t.start_s, t.end_s, frame.frame_index};
          lf.id = next_fragment_id_++;
          lf.char_begin = delta_from + t.char_begin;
          lf.char_end = delta_from + t.char_end;
          subs.push_back(lf.seg);
          live_.push_back(std::move(lf));
        }
        if (probe_.on_subsegments) probe_.on_subsegments(subs);
        pending_interval_.reset();
      }
    }
  }

  prev_text_ = curr;
  bool hold_last = !curr.empty() && !is_space_byte(curr.back());
  return run_alignment(tokens, hold_last, frame.frame_index);
}

std::vector<CaptionEvent> SessionEngine::finish() {
  if (finished_) return {};
  finished_ = true;
  std::vector<TokenSpan> tokens = tokenize_current(prev_text_);
  return run_alignment(tokens, /*hold_last=*/false, last_frame_index_);
}

void SessionEngine::check_consistency() const {
  std::vector<TokenSpan> tokens = tokenize_current(prev_text_);
  if (finalized_.size() > tokens.size()) {
    throw AlignmentError("more finalized words than transcript tokens");
  }
  for (std::size_t i = 0; i < finalized_.size(); ++i) {
    if (finalized_[i].word.word != tokens[i].token) {
      throw AlignmentError("finalized word '" + finalized_[i].word.word +
                           "' does not match transcript token '" + tokens[i].token + "'");
    }
  }
  std::string expected;
  for (std::size_t i = finalized_.size(); i < tokens.size(); ++i) expected += tokens[i].token;
  std::string actual;
  for (const auto& lf : live_) actual += lf.seg.token;
  if (expected != actual) {
    throw AlignmentError("live fragments '" + actual + "' do not cover transcript remainder '" +
                         expected + "'");
  }
  for (std::size_t i = 1; i < live_.size(); ++i) {
    assert(live_[i].seg.start_s >= live_[i - 1].seg.end_s - kTimeEpsilon);
  }
}

}  // namespace wordalign
