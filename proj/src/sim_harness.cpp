#include "wordalign/sim_harness.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace wordalign {

std::vector<AsrScriptEntry> simulate_asr(const std::vector<GroundTruthWord>& truth,
                                         double frame_interval_s) {
  if (!(frame_interval_s > 0.0)) {
    throw ConfigError("frame interval must be positive");
  }
  std::vector<AsrScriptEntry> script;
  if (truth.empty()) return script;
  double duration = truth.back().end_s;
  auto frames = static_cast<std::int64_t>(std::ceil(duration / frame_interval_s - kTimeEpsilon));
  script.reserve(static_cast<std::size_t>(frames));
  for (std::int64_t i = 0; i < frames; ++i) {
    double boundary = std::min(static_cast<double>(i + 1) * frame_interval_s, duration);
    script.push_back({i, cumulative_text_at(truth, boundary)});
  }
  return script;
}

std::vector<CaptionEvent> fold_final_words(const std::vector<CaptionEvent>& events) {
  std::vector<CaptionEvent> words;
  for (const CaptionEvent& e : events) {
    switch (e.kind) {
      case EventKind::kWordFinal:
        words.push_back(e);
        break;
      case EventKind::kRevision: {
        auto overlaps = [&](const CaptionEvent& w) {
          return w.start_s < e.end_s && e.start_s < w.end_s;
        };
        words.erase(std::remove_if(words.begin(), words.end(), overlaps), words.end());
        words.push_back(e);
        break;
      }
      case EventKind::kPartialTail:
        break;
    }
  }
  std::stable_sort(words.begin(), words.end(),
                   [](const CaptionEvent& a, const CaptionEvent& b) {
                     return a.start_s < b.start_s;
                   });
  return words;
}

AccuracyReport score(const std::vector<CaptionEvent>& events,
                     const std::vector<GroundTruthWord>& truth) {
  AccuracyReport report;
  if (truth.empty()) {
    report.word_match_rate = 1.0;
    return report;
  }

  std::vector<CaptionEvent> words = fold_final_words(events);

  std::size_t matched = 0;
  double start_err_sum = 0.0;
  double end_err_sum = 0.0;
  const std::size_t pairs = std::min(words.size(), truth.size());
  for (std::size_t i = 0; i < pairs; ++i) {
    if (words[i].word != truth[i].word) continue;
    ++matched;
    double sd = std::abs(words[i].start_s - truth[i].start_s);
    double ed = std::abs(words[i].end_s - truth[i].end_s);
    start_err_sum += sd;
    end_err_sum += ed;
    report.max_abs_start_err_s = std::max(report.max_abs_start_err_s, sd);
  }
  report.word_match_rate = static_cast<double>(matched) / static_cast<double>(truth.size());
  if (matched > 0) {
    report.mean_abs_start_err_s = start_err_sum / static_cast<double>(matched);
    report.mean_abs_end_err_s = end_err_sum / static_cast<double>(matched);
  }
  return report;
}

std::string report_to_json(const AccuracyReport& report) {
  nlohmann::ordered_json j;
  j["mean_abs_start_err_s"] = report.mean_abs_start_err_s;
  j["mean_abs_end_err_s"] = report.mean_abs_end_err_s;
  j["max_abs_start_err_s"] = report.max_abs_start_err_s;
  j["word_match_rate"] = report.word_match_rate;
  return j.dump();
}

}  // namespace wordalign
