#include "wordalign/timeline.hpp"

namespace wordalign {

bool is_space_byte(char c) {
  switch (c) {
    case ' ':
    case '\t':
    case '\n':
    case '\r':
    case '\f':
    case '\v':
      return true;
    default:
      return false;
  }
}

static std::vector<TokenSpan> tokenize_whitespace(std::string_view text) {
  std::vector<TokenSpan> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space_byte(text[i])) ++i;
    if (i >= text.size()) break;
    std::size_t begin = i;
    while (i < text.size() && !is_space_byte(text[i])) ++i;
    out.push_back({std::string(text.substr(begin, i - begin)), begin, i});
  }
  return out;
}

static std::vector<TokenSpan> tokenize_segmenter(std::string_view text,
                                                 const Segmenter& segmenter) {
  std::vector<TokenSpan> out;
  std::size_t cursor = 0;
  for (std::string& tok : segmenter(text)) {
    if (tok.empty()) {
      throw ConfigError("segmenter produced an empty token");
    }
    for (char c : tok) {
      if (is_space_byte(c)) {
        throw ConfigError("segmenter produced a token containing whitespace");
      }
    }
    std::size_t pos = text.find(tok, cursor);
    if (pos == std::string_view::npos) {
      throw ConfigError("segmenter token '" + tok + "' is not an in-order substring of the input");
    }
    std::size_t end = pos + tok.size();
    out.push_back({std::move(tok), pos, end});
    cursor = end;
  }
  return out;
}

std::vector<TokenSpan> tokenize_with_offsets(std::string_view text, TokenizerMode mode,
                                             const Segmenter* segmenter) {
  if (mode == TokenizerMode::kWhitespace) {
    return tokenize_whitespace(text);
  }
  if (segmenter == nullptr || !*segmenter) {
    throw ConfigError("pluggable-segmenter mode requested but no segmenter is registered");
  }
  return tokenize_segmenter(text, *segmenter);
}

std::vector<std::string> tokenize(std::string_view text, TokenizerMode mode,
                                  const Segmenter* segmenter) {
  std::vector<std::string> out;
  for (auto& ts : tokenize_with_offsets(text, mode, segmenter)) {
    out.push_back(std::move(ts.token));
  }
  return out;
}

std::string normalize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (is_space_byte(c)) {
      pending_space = !out.empty();
    } else {
      if (pending_space) out.push_back(' ');
      pending_space = false;
      out.push_back(c);
    }
  }
  return out;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

}  // namespace wordalign
