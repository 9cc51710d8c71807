// wordalign: word-level timestamps and loudness styling for streaming
// cumulative ASR hypotheses.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"

#include "wordalign/asr_backend.hpp"
#include "wordalign/audio_ingest.hpp"
#include "wordalign/emitters.hpp"
#include "wordalign/pipeline.hpp"
#include "wordalign/sim_harness.hpp"

namespace {

using namespace wordalign;

LoudnessMap parse_loudness_map(const std::string& spec) {
  LoudnessMap map;
  double v[4];
  std::stringstream ss(spec);
  std::string part;
  int i = 0;
  while (std::getline(ss, part, ',')) {
    if (i >= 4) throw ConfigError("loudness map needs exactly 4 comma-separated numbers");
    try {
      v[i++] = std::stod(part);
    } catch (const std::exception&) {
      throw ConfigError("loudness map component '" + part + "' is not a number");
    }
  }
  if (i != 4) throw ConfigError("loudness map needs exactly 4 comma-separated numbers");
  map.lo_db = v[0];
  map.hi_db = v[1];
  map.lo_scale = v[2];
  map.hi_scale = v[3];
  map.validate();
  return map;
}

std::unique_ptr<AsrBackend> make_backend(const std::string& spec, const std::string& session,
                                         int timeout_ms) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw ConfigError("--asr expects script:<path>, oracle:<truth.jsonl>, or url:<endpoint>");
  }
  std::string kind = spec.substr(0, colon);
  std::string arg = spec.substr(colon + 1);
  if (kind == "script") {
    return std::make_unique<ScriptedAsrBackend>(load_asr_script_file(arg));
  }
  if (kind == "oracle") {
    return std::make_unique<OracleAsrBackend>(load_ground_truth_file(arg));
  }
  if (kind == "url") {
    return std::make_unique<HttpAsrBackend>(arg, session, timeout_ms);
  }
  throw ConfigError("unknown ASR backend kind '" + kind + "'");
}

struct RunArgs {
  std::string input;
  bool pcm16le = false;
  int rate = 16000;
  int frame_ms = 250;
  std::string asr;
  std::string asr_url;
  std::string split = "linear";
  std::string out = "jsonl";
  std::string out_file;
  std::string loudness_map;
  std::string session = "default";
  bool case_insensitive = false;
  int asr_timeout_ms = 5000;
  int asr_workers = 1;
};

int cmd_run(RunArgs args) {
  if (!args.asr_url.empty()) args.asr = "url:" + args.asr_url;
  if (args.asr.empty()) {
    throw ConfigError("one of --asr or --asr-url is required");
  }
  std::unique_ptr<SampleSource> source;
  std::unique_ptr<std::istream> owned_stream;
  WavAudio wav;
  if (args.pcm16le) {
    if (args.input == "-") {
      source = std::make_unique<RawPcm16Source>(std::cin, args.rate);
    } else {
      owned_stream = std::make_unique<std::ifstream>(args.input, std::ios::binary);
      if (!*owned_stream) throw IngestError("cannot open " + args.input);
      source = std::make_unique<RawPcm16Source>(*owned_stream, args.rate);
    }
  } else {
    if (args.input == "-") {
      wav = decode_wav(std::cin);
    } else {
      wav = decode_wav_file(args.input);
    }
    source = std::make_unique<MemorySource>(std::move(wav.samples), wav.sample_rate_hz);
  }

  AudioStore store(source->sample_rate_hz());

  PipelineConfig config;
  config.frame_interval_s = args.frame_ms / 1000.0;
  config.asr_workers = args.asr_workers;
  config.engine.session = args.session;
  config.engine.case_insensitive = args.case_insensitive;
  config.engine.split =
      args.split == "char-weighted" ? SplitStrategy::kCharWeighted : SplitStrategy::kLinear;
  if (!args.loudness_map.empty()) {
    config.engine.loudness = parse_loudness_map(args.loudness_map);
  }

  std::unique_ptr<AsrBackend> backend = make_backend(args.asr, args.session, args.asr_timeout_ms);

  std::ofstream out_file;
  std::ostream* out = &std::cout;
  if (!args.out_file.empty()) {
    out_file.open(args.out_file);
    if (!out_file) throw ConfigError("cannot open output file " + args.out_file);
    out = &out_file;
  }
  std::unique_ptr<Emitter> emitter = make_emitter(args.out, *out);

  PipelineStats stats = run_pipeline(*source, store, *backend, config,
                                     [&](const CaptionEvent& e) { emitter->on_event(e); });
  emitter->finish();

  std::cerr << "wordalign: " << stats.frames << " frames (" << stats.skipped_frames
            << " skipped), " << stats.events << " events\n";
  return 0;
}

int cmd_simulate(const std::string& truth_path, int frame_ms, const std::string& script_path) {
  auto truth = load_ground_truth_file(truth_path);
  auto script = simulate_asr(truth, frame_ms / 1000.0);
  std::ofstream out(script_path);
  if (!out) throw ConfigError("cannot open " + script_path);
  save_asr_script(out, script);
  std::cerr << "wordalign: wrote " << script.size() << " script entries\n";
  return 0;
}

int cmd_score(const std::string& events_path, const std::string& truth_path) {
  std::ifstream in(events_path);
  if (!in) throw ConfigError("cannot open " + events_path);
  std::vector<CaptionEvent> events;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) events.push_back(event_from_json(line));
  }
  auto truth = load_ground_truth_file(truth_path);
  std::cout << report_to_json(score(events, truth)) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"word-level caption timing from streaming cumulative ASR"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "stream audio through the full pipeline");
  run->set_config("--config")->description("key=value config file; flags take precedence");
  run->add_option("--input", run_args.input, "WAV path, or - for stdin")->required();
  run->add_flag("--pcm16le", run_args.pcm16le, "input is raw PCM16 little-endian mono");
  run->add_option("--rate", run_args.rate, "sample rate for --pcm16le input")
      ->check(CLI::PositiveNumber);
  run->add_option("--frame-ms", run_args.frame_ms, "frame interval in milliseconds")
      ->check(CLI::Range(50, 2000))
      ->capture_default_str();
  auto* asr_opt = run->add_option("--asr", run_args.asr,
                                  "script:<path> | oracle:<truth.jsonl> | url:<endpoint>");
  run->add_option("--asr-url", run_args.asr_url, "recognizer service endpoint")
      ->excludes(asr_opt);
  run->add_option("--split", run_args.split, "sub-split strategy")
      ->check(CLI::IsMember({"linear", "char-weighted"}))
      ->capture_default_str();
  run->add_option("--out", run_args.out, "emitter")
      ->check(CLI::IsMember({"jsonl", "vtt", "ansi"}))
      ->capture_default_str();
  run->add_option("--out-file", run_args.out_file, "write emitter output here instead of stdout");
  run->add_option("--loudness-map", run_args.loudness_map, "lo_db,hi_db,lo_scale,hi_scale");
  run->add_option("--session", run_args.session, "session id stamped on events")
      ->capture_default_str();
  run->add_flag("--case-insensitive", run_args.case_insensitive,
                "case-insensitive token matching");
  run->add_option("--asr-timeout-ms", run_args.asr_timeout_ms, "service backend timeout")
      ->capture_default_str();
  run->add_option("--asr-workers", run_args.asr_workers, "concurrent recognizer requests")
      ->check(CLI::Range(1, 64))
      ->capture_default_str();

  std::string truth_path, script_path, events_path;
  int sim_frame_ms = 250;
  auto* simulate = app.add_subcommand("simulate", "script an ideal recognizer over ground truth");
  simulate->add_option("--truth", truth_path, "ground truth JSONL")->required();
  simulate->add_option("--frame-ms", sim_frame_ms, "frame interval in milliseconds")
      ->check(CLI::Range(50, 2000))
      ->capture_default_str();
  simulate->add_option("--emit-script", script_path, "output script JSONL path")->required();

  std::string score_events, score_truth;
  auto* score_cmd = app.add_subcommand("score", "compare an event log against ground truth");
  score_cmd->add_option("--events", score_events, "caption events JSONL")->required();
  score_cmd->add_option("--truth", score_truth, "ground truth JSONL")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_args);
    if (simulate->parsed()) return cmd_simulate(truth_path, sim_frame_ms, script_path);
    if (score_cmd->parsed()) return cmd_score(score_events, score_truth);
  } catch (const std::exception& e) {
    std::cerr << "wordalign: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
