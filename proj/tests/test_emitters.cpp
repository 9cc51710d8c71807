#include <sstream>

#include "doctest.h"

#include "wordalign/emitters.hpp"

using namespace wordalign;

namespace {

CaptionEvent sample_event() {
  CaptionEvent e;
  e.kind = EventKind::kWordFinal;
  e.session = "s1";
  e.word = "choose";
  e.start_s = 0.25;
  e.end_s = 1.0;
  e.loudness_dbfs = -21.5;
  e.style_scale = 1.2;
  e.frame = 2;
  return e;
}

}  // namespace

TEST_CASE("jsonl schema is byte-stable with fixed field order") {
  std::ostringstream out;
  JsonlEmitter emitter(out);
  emitter.on_event(sample_event());
  CHECK(out.str() ==
        "{\"kind\":\"word_final\",\"session\":\"s1\",\"word\":\"choose\","
        "\"start_s\":0.25,\"end_s\":1.0,\"loudness_dbfs\":-21.5,"
        "\"style_scale\":1.2,\"frame\":2,\"attrs\":{}}\n");

  CaptionEvent silent = sample_event();
  silent.kind = EventKind::kPartialTail;
  silent.loudness_dbfs = std::nullopt;
  silent.attrs["low_confidence"] = "true";
  std::ostringstream out2;
  JsonlEmitter(out2).on_event(silent);
  CHECK(out2.str() ==
        "{\"kind\":\"partial_tail\",\"session\":\"s1\",\"word\":\"choose\","
        "\"start_s\":0.25,\"end_s\":1.0,\"loudness_dbfs\":null,"
        "\"style_scale\":1.2,\"frame\":2,\"attrs\":{\"low_confidence\":\"true\"}}\n");
}

TEST_CASE("jsonl round trips through the parser") {
  CaptionEvent e = sample_event();
  CaptionEvent parsed = event_from_json(event_to_json(e));
  CHECK(parsed.kind == e.kind);
  CHECK(parsed.session == e.session);
  CHECK(parsed.word == e.word);
  CHECK(parsed.start_s == e.start_s);
  CHECK(parsed.end_s == e.end_s);
  CHECK(parsed.loudness_dbfs == e.loudness_dbfs);
  CHECK(parsed.style_scale == e.style_scale);
  CHECK(parsed.frame == e.frame);
}

TEST_CASE("vtt timestamps") {
  CHECK(format_vtt_timestamp(0.0) == "00:00:00.000");
  CHECK(format_vtt_timestamp(1.25) == "00:00:01.250");
  CHECK(format_vtt_timestamp(3661.007) == "01:01:01.007");
}

TEST_CASE("vtt emitter writes one sized cue per final word") {
  std::ostringstream out;
  VttEmitter emitter(out);
  CaptionEvent e = sample_event();
  emitter.on_event(e);

  CaptionEvent tail = sample_event();
  tail.kind = EventKind::kPartialTail;
  tail.word = "to";
  emitter.on_event(tail);  // transient; must not become a cue

  emitter.finish();
  CHECK(out.str() ==
        "WEBVTT\n\n"
        "1\n"
        "00:00:00.250 --> 00:00:01.000 size:120%\n"
        "choose\n\n");
}

TEST_CASE("ansi emitter rewrites the line and ends it at finish") {
  std::ostringstream out;
  AnsiEmitter emitter(out, /*color=*/false);
  emitter.on_event(sample_event());
  emitter.finish();
  std::string s = out.str();
  CHECK(s.find("choose") != std::string::npos);
  CHECK(s.find('\r') != std::string::npos);
  CHECK(s.back() == '\n');
}

TEST_CASE("unknown emitter kind is a configuration error") {
  std::ostringstream out;
  CHECK_THROWS_AS(make_emitter("pdf", out), ConfigError);
}
