#include "wordalign/events.hpp"

#include "json.hpp"

namespace wordalign {

const char* event_kind_name(EventKind kind) {
  switch (kind) {
    case EventKind::kWordFinal:
      return "word_final";
    case EventKind::kPartialTail:
      return "partial_tail";
    case EventKind::kRevision:
      return "revision";
  }
  return "unknown";
}

static EventKind kind_from_name(const std::string& name) {
  if (name == "word_final") return EventKind::kWordFinal;
  if (name == "partial_tail") return EventKind::kPartialTail;
  if (name == "revision") return EventKind::kRevision;
  throw ConfigError("unknown event kind '" + name + "'");
}

std::string event_to_json(const CaptionEvent& event) {
  nlohmann::ordered_json j;
  j["kind"] = event_kind_name(event.kind);
  j["session"] = event.session;
  j["word"] = event.word;
  j["start_s"] = event.start_s;
  j["end_s"] = event.end_s;
  if (event.loudness_dbfs) {
    j["loudness_dbfs"] = *event.loudness_dbfs;
  } else {
    j["loudness_dbfs"] = nullptr;
  }
  j["style_scale"] = event.style_scale;
  j["frame"] = event.frame;
  j["attrs"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : event.attrs) j["attrs"][k] = v;
  return j.dump();
}

CaptionEvent event_from_json(const std::string& line) {
  nlohmann::json j = nlohmann::json::parse(line);
  CaptionEvent e;
  e.kind = kind_from_name(j.at("kind").get<std::string>());
  e.session = j.at("session").get<std::string>();
  e.word = j.at("word").get<std::string>();
  e.start_s = j.at("start_s").get<double>();
  e.end_s = j.at("end_s").get<double>();
  if (!j.at("loudness_dbfs").is_null()) {
    e.loudness_dbfs = j.at("loudness_dbfs").get<double>();
  }
  e.style_scale = j.at("style_scale").get<double>();
  e.frame = j.at("frame").get<std::int64_t>();
  if (j.contains("attrs")) {
    for (auto it = j["attrs"].begin(); it != j["attrs"].end(); ++it) {
      e.attrs[it.key()] = it.value().get<std::string>();
    }
  }
  return e;
}

}  // namespace wordalign
