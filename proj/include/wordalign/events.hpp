#ifndef WORDALIGN_EVENTS_HPP_
#define WORDALIGN_EVENTS_HPP_

#include <cstdint>
#include <map>
#include <string>

#include "wordalign/timeline.hpp"

namespace wordalign {

enum class EventKind {
  kWordFinal,
  kPartialTail,
  kRevision,
};

const char* event_kind_name(EventKind kind);  // "word_final" | "partial_tail" | "revision"

// One caption update. `word` carries the finalized word for kWordFinal and
// kRevision, and the in-progress text for kPartialTail.
struct CaptionEvent {
  EventKind kind = EventKind::kWordFinal;
  std::string session;
  std::string word;
  double start_s = 0.0;
  double end_s = 0.0;
  LoudnessDbfs loudness_dbfs;
  double style_scale = 1.0;
  std::int64_t frame = 0;
  std::map<std::string, std::string> attrs;
};

// One JSON object, fixed field order:
// {"kind":...,"session":...,"word":...,"start_s":...,"end_s":...,
//  "loudness_dbfs":num|null,"style_scale":...,"frame":...,"attrs":{...}}
std::string event_to_json(const CaptionEvent& event);

// Parses one JSONL line (used by the scoring tool and tests).
CaptionEvent event_from_json(const std::string& line);

}  // namespace wordalign

#endif  // WORDALIGN_EVENTS_HPP_
