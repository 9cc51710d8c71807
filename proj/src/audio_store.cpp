#include "wordalign/audio_store.hpp"

#include <cmath>
#include <mutex>
#include <string>

namespace wordalign {

AudioStore::AudioStore(int sample_rate_hz) : rate_(sample_rate_hz) {
  if (sample_rate_hz <= 0) {
    throw ConfigError("sample rate must be positive, got " + std::to_string(sample_rate_hz));
  }
}

void AudioStore::append(const std::vector<float>& samples) {
  std::unique_lock lock(mutex_);
  samples_.insert(samples_.end(), samples.begin(), samples.end());
}

std::size_t AudioStore::total_samples() const {
  std::shared_lock lock(mutex_);
  return samples_.size();
}

double AudioStore::total_duration_s() const {
  std::shared_lock lock(mutex_);
  return static_cast<double>(samples_.size()) / rate_;
}

std::vector<float> AudioStore::slice(double start_s, double end_s) const {
  std::shared_lock lock(mutex_);
  const double total = static_cast<double>(samples_.size()) / rate_;
  if (!(start_s >= 0.0 && start_s < end_s && end_s <= total + kTimeEpsilon)) {
    throw RangeError("slice [" + std::to_string(start_s) + ", " + std::to_string(end_s) +
                     ") outside store duration " + std::to_string(total));
  }
  // Sample k is included iff k >= start*rate and k < end*rate. The small
  // backoff keeps exact boundaries (k == t*rate) on the intended side.
  auto first_at_or_after = [this](double t) {
    double x = t * rate_;
    return static_cast<std::size_t>(std::llround(std::ceil(x - 1e-6)));
  };
  std::size_t lo = first_at_or_after(start_s);
  std::size_t hi = first_at_or_after(end_s);
  if (hi > samples_.size()) hi = samples_.size();
  if (lo > hi) lo = hi;
  return std::vector<float>(samples_.begin() + static_cast<std::ptrdiff_t>(lo),
                            samples_.begin() + static_cast<std::ptrdiff_t>(hi));
}

}  // namespace wordalign
