#include "wordalign/asr_backend.hpp"

#include <cmath>
#include <fstream>

#include "httplib.h"
#include "json.hpp"

namespace wordalign {

std::vector<AsrScriptEntry> load_asr_script(std::istream& in) {
  std::vector<AsrScriptEntry> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line);
    AsrScriptEntry e;
    e.frame_index = j.at("frame").get<std::int64_t>();
    e.text = j.at("text").get<std::string>();
    if (!out.empty() && e.frame_index <= out.back().frame_index) {
      throw ConfigError("ASR script entries must be sorted by frame, one per frame");
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<AsrScriptEntry> load_asr_script_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open ASR script " + path);
  return load_asr_script(in);
}

void save_asr_script(std::ostream& out, const std::vector<AsrScriptEntry>& entries) {
  for (const auto& e : entries) {
    nlohmann::ordered_json j;
    j["frame"] = e.frame_index;
    j["text"] = e.text;
    out << j.dump() << '\n';
  }
}

ScriptedAsrBackend::ScriptedAsrBackend(std::vector<AsrScriptEntry> entries) {
  for (auto& e : entries) by_frame_[e.frame_index] = std::move(e.text);
}

CumulativeTranscript ScriptedAsrBackend::recognize_cumulative(const AudioStore&,
                                                              const AudioFrame& frame) {
  CumulativeTranscript t;
  t.frame_index = frame.index;
  // No entry for this frame: carry the nearest earlier hypothesis forward.
  auto it = by_frame_.upper_bound(frame.index);
  if (it != by_frame_.begin()) {
    t.text = std::prev(it)->second;
  }
  return t;
}

CumulativeTranscript OracleAsrBackend::recognize_cumulative(const AudioStore&,
                                                            const AudioFrame& frame) {
  return {frame.index, cumulative_text_at(truth_, frame.end_s)};
}

// --- base64 -----------------------------------------------------------------

static const char kB64Alphabet[] =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::string base64_encode(const unsigned char* data, std::size_t len) {
  std::string out;
  out.reserve(((len + 2) / 3) * 4);
  for (std::size_t i = 0; i < len; i += 3) {
    unsigned v = static_cast<unsigned>(data[i]) << 16;
    if (i + 1 < len) v |= static_cast<unsigned>(data[i + 1]) << 8;
    if (i + 2 < len) v |= static_cast<unsigned>(data[i + 2]);
    out.push_back(kB64Alphabet[(v >> 18) & 63]);
    out.push_back(kB64Alphabet[(v >> 12) & 63]);
    out.push_back(i + 1 < len ? kB64Alphabet[(v >> 6) & 63] : '=');
    out.push_back(i + 2 < len ? kB64Alphabet[v & 63] : '=');
  }
  return out;
}

std::vector<unsigned char> base64_decode(std::string_view text) {
  auto value_of = [](char c) -> int {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    return -1;
  };
  std::vector<unsigned char> out;
  unsigned acc = 0;
  int bits = 0;
  for (char c : text) {
    if (c == '=' || c == '\n' || c == '\r') continue;
    int v = value_of(c);
    if (v < 0) throw ConfigError("invalid base64 input");
    acc = (acc << 6) | static_cast<unsigned>(v);
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      out.push_back(static_cast<unsigned char>((acc >> bits) & 0xFF));
    }
  }
  return out;
}

// --- HTTP client -------------------------------------------------------------

struct HttpAsrBackend::Impl {
  std::string base;
  std::string path;
  std::string session;
  int timeout_ms;
};

HttpAsrBackend::HttpAsrBackend(std::string url, std::string session, int timeout_ms)
    : impl_(std::make_unique<Impl>()) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("ASR service URL must include a scheme: " + url);
  }
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) {
    impl_->base = url;
    impl_->path = "/recognize";
  } else {
    impl_->base = url.substr(0, path_start);
    impl_->path = url.substr(path_start);
  }
  impl_->session = std::move(session);
  impl_->timeout_ms = timeout_ms;
}

HttpAsrBackend::~HttpAsrBackend() = default;

CumulativeTranscript HttpAsrBackend::recognize_cumulative(const AudioStore& store,
                                                          const AudioFrame& frame) {
  // Full concatenated audio from the stream start through this frame.
  std::vector<float> samples = store.slice(0.0, frame.end_s);
  std::vector<unsigned char> pcm(samples.size() * 2);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    float clamped = std::min(1.0f, std::max(-1.0f, samples[i]));
    auto v = static_cast<std::int16_t>(std::lround(clamped * 32767.0f));
    pcm[2 * i] = static_cast<unsigned char>(static_cast<std::uint16_t>(v) & 0xFF);
    pcm[2 * i + 1] = static_cast<unsigned char>(static_cast<std::uint16_t>(v) >> 8);
  }

  nlohmann::ordered_json body;
  body["session"] = impl_->session;
  body["seq"] = frame.index;
  body["rate"] = store.sample_rate_hz();
  body["pcm16"] = base64_encode(pcm.data(), pcm.size());

  // One connection per request: httplib clients are not thread-safe, and the
  // pipeline may fan recognition out to several workers at once.
  httplib::Client client(impl_->base);
  client.set_connection_timeout(0, impl_->timeout_ms * 1000LL);
  client.set_read_timeout(impl_->timeout_ms / 1000, (impl_->timeout_ms % 1000) * 1000LL);
  client.set_write_timeout(impl_->timeout_ms / 1000, (impl_->timeout_ms % 1000) * 1000LL);
  httplib::Headers headers = {{"session", impl_->session}};
  httplib::Result res = client.Post(impl_->path, headers, body.dump(), "application/json");
  if (!res) {
    throw BackendError("ASR service request failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw BackendError("ASR service returned status " + std::to_string(res->status));
  }
  try {
    nlohmann::json j = nlohmann::json::parse(res->body);
    return {frame.index, j.at("text").get<std::string>()};
  } catch (const nlohmann::json::exception& e) {
    throw BackendError(std::string("ASR service response is not valid JSON: ") + e.what());
  }
}

}  // namespace wordalign
