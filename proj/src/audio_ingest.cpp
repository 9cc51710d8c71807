#include "wordalign/audio_ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

namespace wordalign {

std::size_t MemorySource::read(float* out, std::size_t max_samples) {
  std::size_t n = std::min(max_samples, samples_.size() - pos_);
  std::copy_n(samples_.begin() + static_cast<std::ptrdiff_t>(pos_), n, out);
  pos_ += n;
  return n;
}

std::size_t RawPcm16Source::read(float* out, std::size_t max_samples) {
  std::vector<char> buf(max_samples * 2);
  in_.read(buf.data(), static_cast<std::streamsize>(buf.size()));
  std::size_t got = static_cast<std::size_t>(in_.gcount());
  if (got % 2 != 0) {
    // istream::read only returns short at end of stream, so an odd count
    // means the stream ends mid-sample.
    throw IngestError("raw PCM16 stream ends with an odd byte at offset " +
                      std::to_string(byte_offset_ + got));
  }
  byte_offset_ += got;
  std::size_t n = got / 2;
  for (std::size_t i = 0; i < n; ++i) {
    std::int16_t v = static_cast<std::int16_t>(
        static_cast<std::uint16_t>(static_cast<unsigned char>(buf[2 * i])) |
        (static_cast<std::uint16_t>(static_cast<unsigned char>(buf[2 * i + 1])) << 8));
    out[i] = pcm16_to_float(v);
  }
  return n;
}

namespace {

std::uint32_t read_u32le(std::istream& in, const char* what) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) {
    throw IngestError(std::string("WAV truncated while reading ") + what);
  }
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

std::uint16_t read_u16le(std::istream& in, const char* what) {
  unsigned char b[2];
  if (!in.read(reinterpret_cast<char*>(b), 2)) {
    throw IngestError(std::string("WAV truncated while reading ") + what);
  }
  return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}

}  // namespace

WavAudio decode_wav(std::istream& in) {
  char tag[4];
  if (!in.read(tag, 4) || std::memcmp(tag, "RIFF", 4) != 0) {
    throw IngestError("not a RIFF file");
  }
  read_u32le(in, "RIFF size");
  if (!in.read(tag, 4) || std::memcmp(tag, "WAVE", 4) != 0) {
    throw IngestError("not a WAVE file");
  }

  WavAudio audio;
  int channels = 0;
  bool have_fmt = false;
  bool have_data = false;

  while (in.read(tag, 4)) {
    std::uint32_t chunk_size = read_u32le(in, "chunk size");
    if (std::memcmp(tag, "fmt ", 4) == 0) {
      std::uint16_t format = read_u16le(in, "format tag");
      channels = read_u16le(in, "channel count");
      audio.sample_rate_hz = static_cast<int>(read_u32le(in, "sample rate"));
      read_u32le(in, "byte rate");
      read_u16le(in, "block align");
      std::uint16_t bits = read_u16le(in, "bits per sample");
      if (format != 1 || bits != 16) {
        throw IngestError("only PCM16 WAV is supported (format " + std::to_string(format) +
                          ", " + std::to_string(bits) + " bits)");
      }
      if (channels < 1) throw IngestError("WAV has zero channels");
      if (chunk_size > 16) in.ignore(chunk_size - 16);
      have_fmt = true;
    } else if (std::memcmp(tag, "data", 4) == 0) {
      if (!have_fmt) throw IngestError("WAV data chunk precedes fmt chunk");
      if (chunk_size % 2 != 0) {
        throw IngestError("WAV PCM16 data chunk has odd byte count " +
                          std::to_string(chunk_size));
      }
      std::vector<char> raw(chunk_size);
      if (!in.read(raw.data(), static_cast<std::streamsize>(chunk_size))) {
        std::size_t got = static_cast<std::size_t>(in.gcount());
        if (got % 2 != 0) {
          throw IngestError("WAV PCM16 data truncated at odd byte offset " + std::to_string(got));
        }
        raw.resize(got);
      }
      std::size_t total_samples = raw.size() / 2;
      std::size_t frames = total_samples / static_cast<std::size_t>(channels);
      audio.samples.resize(frames);
      for (std::size_t f = 0; f < frames; ++f) {
        float acc = 0.0f;
        for (int c = 0; c < channels; ++c) {
          std::size_t i = (f * static_cast<std::size_t>(channels) + static_cast<std::size_t>(c)) * 2;
          std::int16_t v = static_cast<std::int16_t>(
              static_cast<std::uint16_t>(static_cast<unsigned char>(raw[i])) |
              (static_cast<std::uint16_t>(static_cast<unsigned char>(raw[i + 1])) << 8));
          acc += pcm16_to_float(v);
        }
        audio.samples[f] = acc / static_cast<float>(channels);
      }
      have_data = true;
    } else {
      // Skip unknown chunks (LIST, fact, ...). Chunks are word-aligned.
      in.ignore(chunk_size + (chunk_size % 2));
    }
  }
  if (!have_data) throw IngestError("WAV file has no data chunk");
  return audio;
}

WavAudio decode_wav_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot open " + path);
  return decode_wav(in);
}

FrameReader::FrameReader(SampleSource& source, AudioStore& store, double frame_interval_s)
    : source_(source), store_(store) {
  if (!(frame_interval_s > 0.0)) {
    throw ConfigError("frame interval must be positive");
  }
  samples_per_frame_ = static_cast<std::size_t>(
      std::llround(frame_interval_s * source.sample_rate_hz()));
  if (samples_per_frame_ == 0) {
    throw ConfigError("frame interval shorter than one sample at this rate");
  }
}

std::optional<AudioFrame> FrameReader::next_frame() {
  if (done_) return std::nullopt;
  std::vector<float> buf(samples_per_frame_);
  std::size_t got = 0;
  while (got < samples_per_frame_) {
    std::size_t n = source_.read(buf.data() + got, samples_per_frame_ - got);
    if (n == 0) break;
    got += n;
  }
  if (got == 0) {
    done_ = true;
    return std::nullopt;
  }
  if (got < samples_per_frame_) {
    buf.resize(got);
    done_ = true;
  }

  const int rate = source_.sample_rate_hz();
  AudioFrame frame;
  frame.index = next_index_++;
  frame.sample_rate_hz = rate;
  // Boundaries from integer sample positions keep adjacent frames bit-exact.
  frame.start_s = static_cast<double>(next_sample_pos_) / rate;
  next_sample_pos_ += got;
  frame.end_s = static_cast<double>(next_sample_pos_) / rate;
  frame.samples = std::move(buf);

  store_.append(frame.samples);
  return frame;
}

}  // namespace wordalign
