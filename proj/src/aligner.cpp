#include "wordalign/aligner.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <limits>
#include <numeric>

namespace wordalign {

namespace {

constexpr long kInfCost = std::numeric_limits<long>::max() / 4;

char fold(char c, bool ci) {
  return ci ? static_cast<char>(std::tolower(static_cast<unsigned char>(c))) : c;
}

std::string concat_tokens(std::span<const SubSegment> fragments, std::size_t begin,
                          std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) out += fragments[i].token;
  return out;
}

long reference_char_total(const std::vector<std::string>& words) {
  long total = 0;
  for (const auto& w : words) total += static_cast<long>(w.size());
  return total;
}

WordSegment make_word(std::span<const SubSegment> fragments, std::size_t begin, std::size_t end,
                      const std::string& word) {
  WordSegment ws;
  ws.word = word;
  ws.fragments.reserve(end - begin);
  for (std::size_t i = begin; i < end; ++i) ws.fragments.push_back(i);
  if (begin < end) {
    ws.start_s = fragments[begin].start_s;
    ws.end_s = fragments[end - 1].end_s;
  } else {
    // Degenerate empty group (more reference words than fragments): pin a
    // zero-width span at the previous boundary.
    double t = begin > 0 ? fragments[begin - 1].end_s
                         : (fragments.empty() ? 0.0 : fragments[0].start_s);
    ws.start_s = t;
    ws.end_s = t;
  }
  return ws;
}

AlignmentResult finish_result(std::span<const SubSegment> fragments,
                              const std::vector<std::string>& reference_words,
                              const AlignerOptions& options, std::vector<std::size_t> group_sizes,
                              long total_cost, std::uint64_t updates) {
  AlignmentResult result;
  result.total_cost = total_cost;
  result.dp_cell_updates = updates;

  std::size_t cursor = 0;
  bool any_empty_group = false;
  for (std::size_t j = 0; j < group_sizes.size(); ++j) {
    std::size_t g = group_sizes[j];
    if (g == 0) any_empty_group = true;
    result.words.push_back(make_word(fragments, cursor, cursor + g, reference_words[j]));
    cursor += g;
  }
  for (std::size_t i = cursor; i < fragments.size(); ++i) {
    result.unmatched_tail.push_back(fragments[i]);
  }

  long ceiling = static_cast<long>(options.cost_ceiling_ratio *
                                   static_cast<double>(reference_char_total(reference_words)));
  result.low_confidence = total_cost > ceiling || any_empty_group;
  return result;
}

}  // namespace

long levenshtein(std::string_view a, std::string_view b, bool case_insensitive) {
  const std::size_t n = a.size(), m = b.size();
  if (n == 0) return static_cast<long>(m);
  if (m == 0) return static_cast<long>(n);
  std::vector<long> prev(m + 1), curr(m + 1);
  std::iota(prev.begin(), prev.end(), 0L);
  for (std::size_t i = 1; i <= n; ++i) {
    curr[0] = static_cast<long>(i);
    char ca = fold(a[i - 1], case_insensitive);
    for (std::size_t j = 1; j <= m; ++j) {
      long sub = prev[j - 1] + (ca == fold(b[j - 1], case_insensitive) ? 0 : 1);
      curr[j] = std::min({prev[j] + 1, curr[j - 1] + 1, sub});
    }
    std::swap(prev, curr);
  }
  return prev[m];
}

AlignmentResult align(std::span<const SubSegment> fragments,
                      const std::vector<std::string>& reference_words,
                      const AlignerOptions& options) {
  const std::size_t n = fragments.size();
  const std::size_t m = reference_words.size();
  if (m == 0) {
    if (n != 0) {
      throw AlignmentError("non-empty fragment list with empty reference transcript");
    }
    return {};
  }

  // Words 0..m_complete-1 form groups; with hold_last_word the final word's
  // fragments become the unmatched tail instead.
  const std::size_t m_complete = options.hold_last_word ? m - 1 : m;
  const bool allow_empty = n < m_complete;  // not enough fragments to give one each
  const bool ci = options.case_insensitive;

  std::uint64_t updates = 0;
  auto group_cost = [&](std::size_t begin, std::size_t end, std::size_t word) {
    return levenshtein(concat_tokens(fragments, begin, end), reference_words[word], ci);
  };

  // tail_cost[i]: cost of the held final word taking fragments [i, n), or the
  // cost of stopping at i when nothing is held (then all fragments must be
  // consumed by groups).
  std::vector<long> tail_cost(n + 1, kInfCost);
  if (options.hold_last_word) {
    for (std::size_t i = 0; i <= n; ++i) {
      tail_cost[i] = group_cost(i, n, m - 1);
    }
  } else {
    tail_cost[n] = 0;
  }

  // Suffix DP: best[j][i] = min cost of covering words j.. with fragments i..
  std::vector<std::vector<long>> best(m_complete + 1, std::vector<long>(n + 1, kInfCost));
  best[m_complete] = tail_cost;
  for (std::size_t j = m_complete; j-- > 0;) {
    const std::size_t min_g = allow_empty ? 0 : 1;
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t g = min_g; i + g <= n; ++g) {
        long rest = best[j + 1][i + g];
        if (rest >= kInfCost) continue;  // infeasible suffix: not a relaxation
        ++updates;
        long c = group_cost(i, i + g, j) + rest;
        if (c < best[j][i]) best[j][i] = c;
      }
    }
  }
  // Each row relaxes at most n(n+1)/2 transitions over at most m rows.
  assert(updates <= static_cast<std::uint64_t>(n) * n * m);

  long total = best[0][0];
  if (total >= kInfCost) {
    throw AlignmentError("no feasible fragment grouping");
  }

  // Greedy front-to-back reconstruction: taking the smallest group size that
  // stays optimal yields the lexicographically smallest group-size vector.
  std::vector<std::size_t> group_sizes(m_complete, 0);
  std::size_t i = 0;
  for (std::size_t j = 0; j < m_complete; ++j) {
    const std::size_t min_g = allow_empty ? 0 : 1;
    for (std::size_t g = min_g; i + g <= n; ++g) {
      long rest = best[j + 1][i + g];
      if (rest >= kInfCost) continue;
      if (group_cost(i, i + g, j) + rest == best[j][i]) {
        group_sizes[j] = g;
        i += g;
        break;
      }
    }
  }

  return finish_result(fragments, reference_words, options, std::move(group_sizes), total,
                       updates);
}

AlignmentResult brute_force_align(std::span<const SubSegment> fragments,
                                  const std::vector<std::string>& reference_words,
                                  const AlignerOptions& options) {
  const std::size_t n = fragments.size();
  const std::size_t m = reference_words.size();
  if (n > 12) {
    throw RangeError("brute-force alignment refuses more than 12 fragments, got " +
                     std::to_string(n));
  }
  if (m == 0) {
    if (n != 0) {
      throw AlignmentError("non-empty fragment list with empty reference transcript");
    }
    return {};
  }

  const std::size_t m_complete = options.hold_last_word ? m - 1 : m;
  const bool allow_empty = n < m_complete;
  const bool ci = options.case_insensitive;

  auto tail_cost = [&](std::size_t i) -> long {
    if (options.hold_last_word) {
      return levenshtein(concat_tokens(fragments, i, n), reference_words[m - 1], ci);
    }
    return i == n ? 0 : kInfCost;
  };

  long best_cost = kInfCost;
  std::vector<std::size_t> best_sizes;
  std::vector<std::size_t> sizes(m_complete, 0);

  // Enumerates group-size vectors in lexicographic order; keeping only strict
  // improvements makes ties resolve to the lexicographically smallest vector,
  // matching the DP's reconstruction rule.
  auto enumerate = [&](auto&& self, std::size_t j, std::size_t i, long cost_so_far) -> void {
    if (cost_so_far >= kInfCost) return;
    if (j == m_complete) {
      long total = cost_so_far + tail_cost(i);
      if (total < best_cost) {
        best_cost = total;
        best_sizes = sizes;
      }
      return;
    }
    std::size_t min_g = allow_empty ? 0 : 1;
    for (std::size_t g = min_g; i + g <= n; ++g) {
      sizes[j] = g;
      long c = levenshtein(concat_tokens(fragments, i, i + g), reference_words[j], ci);
      self(self, j + 1, i + g, cost_so_far + c);
    }
  };
  enumerate(enumerate, 0, 0, 0);

  if (best_cost >= kInfCost) {
    throw AlignmentError("no feasible fragment grouping");
  }
  return finish_result(fragments, reference_words, options, std::move(best_sizes), best_cost, 0);
}

namespace {

bool words_identical(const WordSegment& a, const WordSegment& b) {
  return a.word == b.word && time_eq(a.start_s, b.start_s) && time_eq(a.end_s, b.end_s) &&
         a.fragments == b.fragments;
}

std::string tail_text(const AlignmentResult& r) {
  std::string out;
  for (const auto& f : r.unmatched_tail) out += f.token;
  return out;
}

CaptionEvent word_event(EventKind kind, const WordSegment& w, const std::string& session,
                        std::int64_t frame, bool low_confidence) {
  CaptionEvent e;
  e.kind = kind;
  e.session = session;
  e.word = w.word;
  e.start_s = w.start_s;
  e.end_s = w.end_s;
  e.loudness_dbfs = w.loudness_dbfs;
  e.style_scale = w.style_scale;
  e.frame = frame;
  if (low_confidence) e.attrs["low_confidence"] = "true";
  return e;
}

}  // namespace

std::vector<CaptionEvent> emit_updates(const AlignmentResult& previous,
                                       const AlignmentResult& current,
                                       const std::string& session, std::int64_t frame) {
  std::vector<CaptionEvent> events;

  std::size_t common = 0;
  while (common < previous.words.size() && common < current.words.size() &&
         words_identical(previous.words[common], current.words[common])) {
    ++common;
  }

  for (std::size_t j = common; j < current.words.size(); ++j) {
    const WordSegment& w = current.words[j];
    bool replaces_old = false;
    for (std::size_t p = common; p < previous.words.size(); ++p) {
      if (w.span().overlaps(previous.words[p].span())) {
        replaces_old = true;
        break;
      }
    }
    events.push_back(word_event(replaces_old ? EventKind::kRevision : EventKind::kWordFinal, w,
                                session, frame, current.low_confidence));
  }

  if (!current.unmatched_tail.empty()) {
    const std::string curr_tail = tail_text(current);
    const std::string prev_tail = tail_text(previous);
    bool changed = curr_tail != prev_tail ||
                   previous.unmatched_tail.empty() ||
                   !time_eq(previous.unmatched_tail.front().start_s,
                            current.unmatched_tail.front().start_s) ||
                   !time_eq(previous.unmatched_tail.back().end_s,
                            current.unmatched_tail.back().end_s);
    if (changed) {
      CaptionEvent e;
      e.kind = EventKind::kPartialTail;
      e.session = session;
      e.word = curr_tail;
      e.start_s = current.unmatched_tail.front().start_s;
      e.end_s = current.unmatched_tail.back().end_s;
      e.loudness_dbfs = current.tail_loudness_dbfs;
      e.style_scale = current.tail_style_scale;
      e.frame = frame;
      if (current.low_confidence) e.attrs["low_confidence"] = "true";
      events.push_back(e);
    }
  }

  return events;
}

}  // namespace wordalign
