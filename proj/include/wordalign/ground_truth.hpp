#ifndef WORDALIGN_GROUND_TRUTH_HPP_
#define WORDALIGN_GROUND_TRUTH_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace wordalign {

// One reference word with its true time bounds. Lists are ordered and
// non-overlapping.
struct GroundTruthWord {
  std::string word;
  double start_s = 0.0;
  double end_s = 0.0;
};

// JSONL, one {"word":str,"start_s":num,"end_s":num} per line.
std::vector<GroundTruthWord> load_ground_truth(std::istream& in);
std::vector<GroundTruthWord> load_ground_truth_file(const std::string& path);
void save_ground_truth(std::ostream& out, const std::vector<GroundTruthWord>& words);

// The cumulative transcript a frame-synchronous recognizer would produce at
// boundary t: every word fully spoken by t, plus a character-proportional
// prefix of the word straddling t (prefix length = round(chars * elapsed
// fraction)).
std::string cumulative_text_at(const std::vector<GroundTruthWord>& truth, double t);

}  // namespace wordalign

#endif  // WORDALIGN_GROUND_TRUTH_HPP_
