#ifndef WORDALIGN_ASR_BACKEND_HPP_
#define WORDALIGN_ASR_BACKEND_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "wordalign/audio_store.hpp"
#include "wordalign/ground_truth.hpp"
#include "wordalign/timeline.hpp"

namespace wordalign {

struct AsrScriptEntry {
  std::int64_t frame_index = 0;
  std::string text;  // cumulative hypothesis through this frame
};

// JSONL, one {"frame":int,"text":str} per line, sorted by frame.
std::vector<AsrScriptEntry> load_asr_script(std::istream& in);
std::vector<AsrScriptEntry> load_asr_script_file(const std::string& path);
void save_asr_script(std::ostream& out, const std::vector<AsrScriptEntry>& entries);

// Produces one cumulative hypothesis per frame. Implementations must be
// safely callable from several threads at once; recoverable failures throw
// BackendError (the pipeline then skips the frame and merges its interval
// into the next delta).
class AsrBackend {
 public:
  virtual ~AsrBackend() = default;

  // Hypothesis over audio [0, frame.end_s]. Frames 0..frame.index are fully
  // ingested into the store before this is called.
  virtual CumulativeTranscript recognize_cumulative(const AudioStore& store,
                                                    const AudioFrame& frame) = 0;
};

// Deterministic replay: a pure function of (script, frame index). Frames
// without an entry carry the nearest earlier hypothesis forward.
class ScriptedAsrBackend : public AsrBackend {
 public:
  explicit ScriptedAsrBackend(std::vector<AsrScriptEntry> entries);

  CumulativeTranscript recognize_cumulative(const AudioStore& store,
                                            const AudioFrame& frame) override;

 private:
  std::map<std::int64_t, std::string> by_frame_;
};

// Ideal recognizer over ground-truth word timings: emits every word spoken by
// the frame's end, truncating the in-flight word proportionally by character
// count.
class OracleAsrBackend : public AsrBackend {
 public:
  explicit OracleAsrBackend(std::vector<GroundTruthWord> truth) : truth_(std::move(truth)) {}

  CumulativeTranscript recognize_cumulative(const AudioStore& store,
                                            const AudioFrame& frame) override;

 private:
  std::vector<GroundTruthWord> truth_;
};

// Remote recognizer client. Each request carries the full concatenated audio
// from t=0 as base64 PCM16 in a JSON body:
//   {"session":str,"seq":int,"rate":int,"pcm16":str}
// and expects {"text":str} back. Responses pair with requests by seq.
class HttpAsrBackend : public AsrBackend {
 public:
  HttpAsrBackend(std::string url, std::string session, int timeout_ms = 5000);
  ~HttpAsrBackend() override;

  CumulativeTranscript recognize_cumulative(const AudioStore& store,
                                            const AudioFrame& frame) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::string base64_encode(const unsigned char* data, std::size_t len);
std::vector<unsigned char> base64_decode(std::string_view text);

}  // namespace wordalign

#endif  // WORDALIGN_ASR_BACKEND_HPP_
