#include "wordalign/ground_truth.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "wordalign/timeline.hpp"

namespace wordalign {

std::vector<GroundTruthWord> load_ground_truth(std::istream& in) {
  std::vector<GroundTruthWord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line);
    GroundTruthWord w;
    w.word = j.at("word").get<std::string>();
    w.start_s = j.at("start_s").get<double>();
    w.end_s = j.at("end_s").get<double>();
    if (!(w.end_s > w.start_s)) {
      throw ConfigError("ground-truth word '" + w.word + "' has a non-positive span");
    }
    if (!out.empty() && w.start_s < out.back().end_s - kTimeEpsilon) {
      throw ConfigError("ground-truth words overlap at '" + w.word + "'");
    }
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<GroundTruthWord> load_ground_truth_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open ground truth file " + path);
  return load_ground_truth(in);
}

void save_ground_truth(std::ostream& out, const std::vector<GroundTruthWord>& words) {
  for (const auto& w : words) {
    nlohmann::ordered_json j;
    j["word"] = w.word;
    j["start_s"] = w.start_s;
    j["end_s"] = w.end_s;
    out << j.dump() << '\n';
  }
}

std::string cumulative_text_at(const std::vector<GroundTruthWord>& truth, double t) {
  std::string text;
  auto append = [&text](std::string_view piece) {
    if (piece.empty()) return;
    if (!text.empty()) text.push_back(' ');
    text.append(piece);
  };
  for (const auto& w : truth) {
    if (w.end_s <= t + kTimeEpsilon) {
      append(w.word);
    } else if (w.start_s < t - kTimeEpsilon) {
      double fraction = (t - w.start_s) / (w.end_s - w.start_s);
      auto chars = static_cast<std::size_t>(
          std::lround(static_cast<double>(w.word.size()) * fraction));
      append(std::string_view(w.word).substr(0, chars));
      break;
    } else {
      break;
    }
  }
  return text;
}

}  // namespace wordalign
