#ifndef WORDALIGN_SIM_HARNESS_HPP_
#define WORDALIGN_SIM_HARNESS_HPP_

#include <vector>

#include "wordalign/asr_backend.hpp"
#include "wordalign/events.hpp"
#include "wordalign/ground_truth.hpp"

namespace wordalign {

// Timestamp-accuracy metrics of a finished run against ground truth.
struct AccuracyReport {
  double mean_abs_start_err_s = 0.0;
  double mean_abs_end_err_s = 0.0;
  double max_abs_start_err_s = 0.0;
  double word_match_rate = 0.0;  // fraction of truth words matched by text, in order
};

// Scripts the cumulative hypotheses an ideal frame-synchronous recognizer
// would emit over this truth: one entry per frame, each the transcript at the
// frame's end boundary (in-flight words truncated by character proportion).
std::vector<AsrScriptEntry> simulate_asr(const std::vector<GroundTruthWord>& truth,
                                         double frame_interval_s);

// Folds an event stream into the consumer-visible final word list: WordFinal
// appends, Revision replaces the words its span overlaps, PartialTail is
// transient and ignored.
std::vector<CaptionEvent> fold_final_words(const std::vector<CaptionEvent>& events);

AccuracyReport score(const std::vector<CaptionEvent>& events,
                     const std::vector<GroundTruthWord>& truth);

std::string report_to_json(const AccuracyReport& report);

}  // namespace wordalign

#endif  // WORDALIGN_SIM_HARNESS_HPP_
