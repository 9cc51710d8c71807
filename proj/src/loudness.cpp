#include "wordalign/loudness.hpp"

#include <cmath>

namespace wordalign {

void LoudnessMap::validate() const {
  if (!(lo_db < hi_db)) {
    throw ConfigError("loudness map requires lo_db < hi_db");
  }
  if (!(0.0 < lo_scale && lo_scale < hi_scale)) {
    throw ConfigError("loudness map requires 0 < lo_scale < hi_scale");
  }
}

LoudnessDbfs rms_dbfs(std::span<const float> samples) {
  if (samples.empty()) {
    throw RangeError("rms over empty sample range");
  }
  double sum_sq = 0.0;
  for (float s : samples) {
    sum_sq += static_cast<double>(s) * static_cast<double>(s);
  }
  double mean_sq = sum_sq / static_cast<double>(samples.size());
  if (mean_sq == 0.0) {
    return std::nullopt;  // silent
  }
  return 20.0 * std::log10(std::sqrt(mean_sq));
}

double style_scale(LoudnessDbfs dbfs, const LoudnessMap& map) {
  if (!dbfs) return map.lo_scale;
  double t = (*dbfs - map.lo_db) / (map.hi_db - map.lo_db);
  if (t <= 0.0) return map.lo_scale;
  if (t >= 1.0) return map.hi_scale;
  return map.lo_scale + t * (map.hi_scale - map.lo_scale);
}

WordSegment decorate(WordSegment word, const AudioStore& store, const LoudnessMap& map) {
  std::vector<float> samples = store.slice(word.start_s, word.end_s);
  word.loudness_dbfs = samples.empty() ? std::nullopt : rms_dbfs(samples);
  word.style_scale = style_scale(word.loudness_dbfs, map);
  return word;
}

}  // namespace wordalign
