#ifndef WORDALIGN_EMITTERS_HPP_
#define WORDALIGN_EMITTERS_HPP_

#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "wordalign/events.hpp"

namespace wordalign {

class Emitter {
 public:
  virtual ~Emitter() = default;
  virtual void on_event(const CaptionEvent& event) = 0;
  virtual void finish() {}
};

// One JSON object per event, flushed immediately for live consumers.
class JsonlEmitter : public Emitter {
 public:
  explicit JsonlEmitter(std::ostream& out) : out_(out) {}
  void on_event(const CaptionEvent& event) override;

 private:
  std::ostream& out_;
};

// WebVTT with one cue per final word; the cue's size percentage comes from
// the word's style scale. Cues are written at finish() so revisions settle.
class VttEmitter : public Emitter {
 public:
  explicit VttEmitter(std::ostream& out) : out_(out) {}
  void on_event(const CaptionEvent& event) override;
  void finish() override;

 private:
  std::ostream& out_;
  std::vector<CaptionEvent> events_;
};

// Terminal renderer: rewrites one line as words stabilize. Larger style
// scales render brighter/bold with spaced lettering, smaller ones dim; the
// in-progress tail is shown dimmed.
class AnsiEmitter : public Emitter {
 public:
  explicit AnsiEmitter(std::ostream& out, bool color = true) : out_(out), color_(color) {}
  void on_event(const CaptionEvent& event) override;
  void finish() override;

 private:
  void render();

  std::ostream& out_;
  bool color_;
  std::vector<CaptionEvent> events_;
  CaptionEvent tail_;
  bool have_tail_ = false;
};

std::unique_ptr<Emitter> make_emitter(const std::string& kind, std::ostream& out);

std::string format_vtt_timestamp(double seconds);

}  // namespace wordalign

#endif  // WORDALIGN_EMITTERS_HPP_
