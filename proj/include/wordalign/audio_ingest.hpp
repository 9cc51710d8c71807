#ifndef WORDALIGN_AUDIO_INGEST_HPP_
#define WORDALIGN_AUDIO_INGEST_HPP_

#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wordalign/audio_store.hpp"
#include "wordalign/timeline.hpp"

namespace wordalign {

// Pull-based mono sample source. read() fills as much of `out` as it can and
// returns the number of samples written; 0 means end of stream.
class SampleSource {
 public:
  virtual ~SampleSource() = default;
  virtual int sample_rate_hz() const = 0;
  virtual std::size_t read(float* out, std::size_t max_samples) = 0;
};

class MemorySource : public SampleSource {
 public:
  MemorySource(std::vector<float> samples, int sample_rate_hz)
      : samples_(std::move(samples)), rate_(sample_rate_hz) {}

  int sample_rate_hz() const override { return rate_; }
  std::size_t read(float* out, std::size_t max_samples) override;

 private:
  std::vector<float> samples_;
  int rate_;
  std::size_t pos_ = 0;
};

// Raw PCM16 little-endian mono from a byte stream. An odd trailing byte is an
// ingest error naming the offset.
class RawPcm16Source : public SampleSource {
 public:
  RawPcm16Source(std::istream& in, int sample_rate_hz) : in_(in), rate_(sample_rate_hz) {}

  int sample_rate_hz() const override { return rate_; }
  std::size_t read(float* out, std::size_t max_samples) override;

 private:
  std::istream& in_;
  int rate_;
  std::uint64_t byte_offset_ = 0;
};

struct WavAudio {
  int sample_rate_hz = 0;
  std::vector<float> samples;  // mono (multi-channel input is averaged)
};

// RIFF/WAVE, PCM16 only. Multi-channel data is downmixed by averaging.
WavAudio decode_wav(std::istream& in);
WavAudio decode_wav_file(const std::string& path);

// PCM16 sample to float in [-1, 1].
inline float pcm16_to_float(std::int16_t v) { return static_cast<float>(v) / 32768.0f; }

// Cuts a source into contiguous AudioFrames of frame_interval_s (the last one
// may be shorter) and appends each frame to the store before returning it.
class FrameReader {
 public:
  FrameReader(SampleSource& source, AudioStore& store, double frame_interval_s);

  // nullopt at end of stream.
  std::optional<AudioFrame> next_frame();

 private:
  SampleSource& source_;
  AudioStore& store_;
  std::size_t samples_per_frame_;
  std::int64_t next_index_ = 0;
  std::size_t next_sample_pos_ = 0;
  bool done_ = false;
};

}  // namespace wordalign

#endif  // WORDALIGN_AUDIO_INGEST_HPP_
