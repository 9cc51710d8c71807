#include "wordalign/emitters.hpp"

#include <cmath>
#include <cstdio>

#include "wordalign/sim_harness.hpp"

namespace wordalign {

void JsonlEmitter::on_event(const CaptionEvent& event) {
  out_ << event_to_json(event) << '\n';
  out_.flush();
}

std::string format_vtt_timestamp(double seconds) {
  if (seconds < 0) seconds = 0;
  auto total_ms = static_cast<long long>(std::llround(seconds * 1000.0));
  long long ms = total_ms % 1000;
  long long s = (total_ms / 1000) % 60;
  long long m = (total_ms / 60000) % 60;
  long long h = total_ms / 3600000;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%02lld:%02lld:%02lld.%03lld", h, m, s, ms);
  return buf;
}

void VttEmitter::on_event(const CaptionEvent& event) { events_.push_back(event); }

void VttEmitter::finish() {
  out_ << "WEBVTT\n\n";
  int cue = 1;
  for (const CaptionEvent& w : fold_final_words(events_)) {
    int size_pct = static_cast<int>(std::lround(w.style_scale * 100.0));
    out_ << cue++ << '\n'
         << format_vtt_timestamp(w.start_s) << " --> " << format_vtt_timestamp(w.end_s)
         << " size:" << size_pct << "%\n"
         << w.word << "\n\n";
  }
  out_.flush();
}

void AnsiEmitter::on_event(const CaptionEvent& event) {
  if (event.kind == EventKind::kPartialTail) {
    tail_ = event;
    have_tail_ = true;
  } else {
    events_.push_back(event);
    have_tail_ = false;  // a finalized word supersedes the last tail display
  }
  render();
}

void AnsiEmitter::render() {
  out_ << '\r' << "\033[K";
  for (const CaptionEvent& w : fold_final_words(events_)) {
    if (color_) {
      if (w.style_scale >= 1.4) {
        out_ << "\033[1;97m";  // bold bright
      } else if (w.style_scale >= 1.15) {
        out_ << "\033[1m";  // bold
      } else if (w.style_scale <= 0.9) {
        out_ << "\033[2m";  // dim
      }
    }
    if (w.style_scale >= 1.4) {
      // Spaced lettering approximates a larger font in a fixed-width grid.
      for (std::size_t i = 0; i < w.word.size(); ++i) {
        if (i > 0) out_ << ' ';
        out_ << w.word[i];
      }
    } else {
      out_ << w.word;
    }
    if (color_) out_ << "\033[0m";
    out_ << ' ';
  }
  if (have_tail_ && !tail_.word.empty()) {
    if (color_) out_ << "\033[2m";
    out_ << tail_.word;
    if (color_) out_ << "\033[0m";
  }
  out_.flush();
}

void AnsiEmitter::finish() {
  have_tail_ = false;
  render();
  out_ << '\n';
  out_.flush();
}

std::unique_ptr<Emitter> make_emitter(const std::string& kind, std::ostream& out) {
  if (kind == "jsonl") return std::make_unique<JsonlEmitter>(out);
  if (kind == "vtt") return std::make_unique<VttEmitter>(out);
  if (kind == "ansi") return std::make_unique<AnsiEmitter>(out);
  throw ConfigError("unknown emitter '" + kind + "' (expected jsonl, vtt, or ansi)");
}

}  // namespace wordalign
