#ifndef WORDALIGN_TIMELINE_HPP_
#define WORDALIGN_TIMELINE_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wordalign {

// All times are seconds as doubles. Comparisons on timestamps use this
// tolerance; span construction itself is exact (chained endpoints).
inline constexpr double kTimeEpsilon = 1e-9;

inline bool time_eq(double a, double b) {
  return a - b <= kTimeEpsilon && b - a <= kTimeEpsilon;
}

struct TimeSpan {
  double start_s = 0.0;
  double end_s = 0.0;

  double duration() const { return end_s - start_s; }
  bool overlaps(const TimeSpan& other) const {
    return start_s < other.end_s && other.start_s < end_s;
  }
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class AlignmentError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class BackendError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One chunk of mono PCM with absolute time bounds. Frames of a stream are
// contiguous: frame[i+1].start_s == frame[i].end_s bit-exactly, because both
// are derived from the same integer sample position.
struct AudioFrame {
  std::int64_t index = 0;
  double start_s = 0.0;
  double end_s = 0.0;
  std::vector<float> samples;  // amplitudes in [-1, 1]
  int sample_rate_hz = 0;

  TimeSpan span() const { return {start_s, end_s}; }
};

// Recognizer hypothesis over all audio from t=0 through the given frame.
struct CumulativeTranscript {
  std::int64_t frame_index = 0;
  std::string text;
};

// Set when a new hypothesis does not extend the previous one.
struct RevisionInfo {
  std::size_t lcp_chars = 0;        // shared prefix length with the previous hypothesis
  std::string invalidated_text;     // previous-hypothesis suffix that was replaced
};

// Text newly attributed to one frame's interval (possibly a word fragment,
// several words, or a mix).
struct DeltaSegment {
  std::int64_t frame_index = 0;
  double start_s = 0.0;
  double end_s = 0.0;
  std::string text;
  std::optional<RevisionInfo> revision;

  TimeSpan span() const { return {start_s, end_s}; }
};

// One whitespace/segmenter token with an interpolated time span.
struct SubSegment {
  std::string token;  // non-empty, whitespace-free
  double start_s = 0.0;
  double end_s = 0.0;
  std::int64_t source_frame = 0;

  TimeSpan span() const { return {start_s, end_s}; }
};

// Loudness in dBFS; nullopt is the distinct "silent" state (all-zero audio).
using LoudnessDbfs = std::optional<double>;

// One word of the newest reference transcript with its merged time span.
struct WordSegment {
  std::string word;
  double start_s = 0.0;
  double end_s = 0.0;
  std::vector<std::uint64_t> fragments;  // contributing SubSegment ids, in order
  LoudnessDbfs loudness_dbfs;
  double style_scale = 1.0;

  TimeSpan span() const { return {start_s, end_s}; }
};

enum class TokenizerMode {
  kWhitespace,
  kPluggableSegmenter,
};

// A segmenter must return non-empty, in-order substrings of its input
// (no rewriting), so byte offsets can be recovered.
using Segmenter = std::function<std::vector<std::string>(std::string_view)>;

struct TokenSpan {
  std::string token;
  std::size_t begin = 0;  // byte offset in the source string
  std::size_t end = 0;    // one past the last byte
};

bool is_space_byte(char c);

// Splits on whitespace runs (kWhitespace) or via the given segmenter.
// kPluggableSegmenter with no segmenter throws ConfigError.
std::vector<TokenSpan> tokenize_with_offsets(std::string_view text,
                                             TokenizerMode mode = TokenizerMode::kWhitespace,
                                             const Segmenter* segmenter = nullptr);

std::vector<std::string> tokenize(std::string_view text,
                                  TokenizerMode mode = TokenizerMode::kWhitespace,
                                  const Segmenter* segmenter = nullptr);

// Collapses whitespace runs to single spaces and trims the ends. Case and
// punctuation are preserved.
std::string normalize(std::string_view text);

std::string join_tokens(const std::vector<std::string>& tokens);

}  // namespace wordalign

#endif  // WORDALIGN_TIMELINE_HPP_
