#ifndef WORDALIGN_LOUDNESS_HPP_
#define WORDALIGN_LOUDNESS_HPP_

#include <span>

#include "wordalign/audio_store.hpp"
#include "wordalign/timeline.hpp"

namespace wordalign {

// Linear dBFS -> display scale map, clamped at both ends.
struct LoudnessMap {
  double lo_db = -40.0;
  double hi_db = -10.0;
  double lo_scale = 0.8;
  double hi_scale = 1.6;

  void validate() const;  // throws ConfigError
};

// 20*log10(rms). All-zero input is the silent state; empty input throws
// RangeError.
LoudnessDbfs rms_dbfs(std::span<const float> samples);

// Interpolates dbfs into [lo_scale, hi_scale]; silent maps to lo_scale.
double style_scale(LoudnessDbfs dbfs, const LoudnessMap& map);

// Scores the word's audio span and fills loudness_dbfs / style_scale. Spans
// outside the store throw RangeError; spans shorter than one sample score
// silent.
WordSegment decorate(WordSegment word, const AudioStore& store, const LoudnessMap& map);

}  // namespace wordalign

#endif  // WORDALIGN_LOUDNESS_HPP_
