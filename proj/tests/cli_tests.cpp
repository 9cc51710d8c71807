// End-to-end checks of the installed CLI surface: run/simulate/score, the
// JSONL schemas, raw PCM stdin, and config-file precedence.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "httplib.h"
#include "json.hpp"

#include "wordalign/asr_backend.hpp"
#include "wordalign/events.hpp"
#include "wordalign/ground_truth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
  if (!ok) {
    ++failures;
    std::cerr << "FAILED: " << what << '\n';
  }
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cmd(const std::string& cmd) { return std::system(cmd.c_str()); }

void write_wav(const fs::path& path, std::size_t samples, int rate) {
  std::ofstream out(path, std::ios::binary);
  auto put32 = [&](std::uint32_t v) {
    char b[4] = {static_cast<char>(v), static_cast<char>(v >> 8), static_cast<char>(v >> 16),
                 static_cast<char>(v >> 24)};
    out.write(b, 4);
  };
  auto put16 = [&](std::uint16_t v) {
    char b[2] = {static_cast<char>(v), static_cast<char>(v >> 8)};
    out.write(b, 2);
  };
  out.write("RIFF", 4);
  put32(static_cast<std::uint32_t>(36 + samples * 2));
  out.write("WAVEfmt ", 8);
  put32(16);
  put16(1);
  put16(1);
  put32(static_cast<std::uint32_t>(rate));
  put32(static_cast<std::uint32_t>(rate * 2));
  put16(2);
  put16(16);
  out.write("data", 4);
  put32(static_cast<std::uint32_t>(samples * 2));
  for (std::size_t i = 0; i < samples; ++i) put16(8000);  // constant tone-ish level
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_tests <path-to-wordalign>\n";
    return 2;
  }
  const std::string bin = argv[1];
  fs::path dir = fs::temp_directory_path() / "wordalign_cli_test";
  fs::remove_all(dir);
  fs::create_directories(dir);

  // Fixture: ground truth, simulated script, audio.
  {
    std::ofstream truth(dir / "truth.jsonl");
    wordalign::save_ground_truth(truth, {{"we", 0.0, 0.5}, {"go", 0.5, 1.0}});
  }
  write_wav(dir / "audio.wav", 16000, 16000);  // 1 s

  // simulate writes a script.
  expect(run_cmd(bin + " simulate --truth " + (dir / "truth.jsonl").string() +
                 " --frame-ms 250 --emit-script " + (dir / "script.jsonl").string()) == 0,
         "simulate exits 0");
  {
    std::ifstream script(dir / "script.jsonl");
    auto entries = wordalign::load_asr_script(script);
    expect(entries.size() == 4, "simulate writes one entry per frame");
    expect(!entries.empty() && entries.back().text == "we go", "final entry is full transcript");
  }

  // run with the scripted backend emits JSONL events.
  expect(run_cmd(bin + " run --input " + (dir / "audio.wav").string() +
                 " --frame-ms 250 --asr script:" + (dir / "script.jsonl").string() +
                 " --out jsonl --session cli > " + (dir / "events.jsonl").string() +
                 " 2>/dev/null") == 0,
         "run exits 0");
  {
    std::ifstream in(dir / "events.jsonl");
    std::string line;
    std::vector<wordalign::CaptionEvent> events;
    while (std::getline(in, line)) {
      if (!line.empty()) events.push_back(wordalign::event_from_json(line));
    }
    expect(!events.empty(), "run produced events");
    int finals = 0;
    for (const auto& e : events) {
      expect(e.session == "cli", "events carry the session id");
      if (e.kind == wordalign::EventKind::kWordFinal) ++finals;
    }
    expect(finals == 2, "two final words");
  }

  // score reads both files and reports perfect text match.
  expect(run_cmd(bin + " score --events " + (dir / "events.jsonl").string() + " --truth " +
                 (dir / "truth.jsonl").string() + " > " + (dir / "report.json").string()) == 0,
         "score exits 0");
  {
    json report = json::parse(read_file(dir / "report.json"));
    expect(report.at("word_match_rate").get<double>() == 1.0, "match rate 1.0");
    expect(report.at("mean_abs_start_err_s").get<double>() <= 0.25, "start error within a frame");
  }

  // Raw PCM over stdin with oracle backend and VTT output.
  {
    std::ofstream raw(dir / "audio.pcm", std::ios::binary);
    for (int i = 0; i < 16000; ++i) {
      raw.put(static_cast<char>(0x00));
      raw.put(static_cast<char>(0x20));  // 8192 -> 0.25 full scale
    }
  }
  expect(run_cmd("cat " + (dir / "audio.pcm").string() + " | " + bin +
                 " run --input - --pcm16le --rate 16000 --frame-ms 250 --asr oracle:" +
                 (dir / "truth.jsonl").string() + " --out vtt > " + (dir / "out.vtt").string() +
                 " 2>/dev/null") == 0,
         "raw stdin run exits 0");
  {
    std::string vtt = read_file(dir / "out.vtt");
    expect(vtt.rfind("WEBVTT", 0) == 0, "vtt header present");
    expect(vtt.find("size:") != std::string::npos, "vtt cues carry size settings");
    expect(vtt.find("we") != std::string::npos && vtt.find("go") != std::string::npos,
           "vtt contains both words");
  }

  // Config file supplies defaults; explicit flags win.
  {
    std::ofstream cfg(dir / "wordalign.cfg");
    cfg << "frame-ms=500\n";
    cfg << "session=from-config\n";
  }
  expect(run_cmd(bin + " run --input " + (dir / "audio.wav").string() + " --asr script:" +
                 (dir / "script.jsonl").string() + " --config " +
                 (dir / "wordalign.cfg").string() + " --session from-flag --out jsonl > " +
                 (dir / "events2.jsonl").string() + " 2>/dev/null") == 0,
         "run with config exits 0");
  {
    std::ifstream in(dir / "events2.jsonl");
    std::string line;
    bool saw_any = false;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto e = wordalign::event_from_json(line);
      saw_any = true;
      expect(e.session == "from-flag", "flag overrides config file");
    }
    expect(saw_any, "config-file run produced events");
  }

  // The remote recognizer path: a local service scripted like the oracle.
  {
    httplib::Server server;
    std::vector<wordalign::GroundTruthWord> truth = {{"we", 0.0, 0.5}, {"go", 0.5, 1.0}};
    server.Post("/recognize", [&](const httplib::Request& req, httplib::Response& res) {
      auto body = json::parse(req.body);
      double rate = body.at("rate").get<double>();
      auto pcm = wordalign::base64_decode(body.at("pcm16").get<std::string>());
      double end_s = static_cast<double>(pcm.size() / 2) / rate;
      json out;
      out["text"] = wordalign::cumulative_text_at(truth, end_s);
      res.set_content(out.dump(), "application/json");
    });
    int port = server.bind_to_any_port("127.0.0.1");
    std::thread server_thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    expect(run_cmd(bin + " run --input " + (dir / "audio.wav").string() +
                   " --frame-ms 250 --asr-url http://127.0.0.1:" + std::to_string(port) +
                   "/recognize --out jsonl > " + (dir / "http_events.jsonl").string() +
                   " 2>/dev/null") == 0,
           "run against http service exits 0");
    std::string events = read_file(dir / "http_events.jsonl");
    expect(events.find("\"word\":\"we\"") != std::string::npos &&
               events.find("\"word\":\"go\"") != std::string::npos,
           "http-backed run produced both words");

    server.stop();
    server_thread.join();
  }

  // An empty audio file is a successful run with zero events.
  write_wav(dir / "empty.wav", 0, 16000);
  expect(run_cmd(bin + " run --input " + (dir / "empty.wav").string() + " --asr script:" +
                 (dir / "script.jsonl").string() + " --out jsonl > " +
                 (dir / "empty.jsonl").string() + " 2>/dev/null") == 0,
         "empty audio exits 0");
  expect(read_file(dir / "empty.jsonl").empty(), "empty audio emits no events");

  // Bad input paths exit nonzero with a diagnostic.
  expect(run_cmd(bin + " run --input /nonexistent.wav --asr script:" +
                 (dir / "script.jsonl").string() + " 2>/dev/null") != 0,
         "missing input file fails");
  expect(run_cmd(bin + " run --input " + (dir / "audio.wav").string() +
                 " --asr bogus:x 2>/dev/null") != 0,
         "unknown backend kind fails");

  if (failures == 0) {
    std::cout << "cli_tests: all checks passed\n";
    return 0;
  }
  std::cout << "cli_tests: " << failures << " check(s) failed\n";
  return 1;
}
