#ifndef WORDALIGN_AUDIO_STORE_HPP_
#define WORDALIGN_AUDIO_STORE_HPP_

#include <cstddef>
#include <shared_mutex>
#include <vector>

#include "wordalign/timeline.hpp"

namespace wordalign {

// Growable mono sample history. One writer (the ingest stage) appends whole
// frames; any number of readers slice concurrently. Readers never observe a
// partially appended frame.
class AudioStore {
 public:
  explicit AudioStore(int sample_rate_hz);

  int sample_rate_hz() const { return rate_; }

  void append(const std::vector<float>& samples);

  std::size_t total_samples() const;
  double total_duration_s() const;

  // Samples whose timestamps k/rate fall in [start_s, end_s).
  // Bounds outside [0, total_duration_s] throw RangeError.
  std::vector<float> slice(double start_s, double end_s) const;

 private:
  int rate_;
  std::vector<float> samples_;
  mutable std::shared_mutex mutex_;
};

}  // namespace wordalign

#endif  // WORDALIGN_AUDIO_STORE_HPP_
