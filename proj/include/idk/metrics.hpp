#pragma once

// Corpus metrics for fallback responses: coverage, token-length statistics,
// novel words, plus the human-annotation sheet exporter and importer.

#include <cstdio>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "idk/engine.hpp"
#include "idk/error.hpp"
#include "idk/rng.hpp"
#include "idk/strings.hpp"

namespace idk {

namespace metrics_detail {

inline bool is_terminal(char c) { return c == '.' || c == '?' || c == '!'; }

}  // namespace metrics_detail

// Whitespace split; trailing sentence punctuation of the last word becomes its
// own token ("join MIT?" -> join, MIT, ?).
inline std::vector<std::string> metric_tokens(std::string_view text) {
  auto words = strings::split_whitespace(text);
  if (words.empty()) return words;
  std::string& last = words.back();
  std::size_t cut = last.size();
  while (cut > 0 && metrics_detail::is_terminal(last[cut - 1])) --cut;
  if (cut < last.size()) {
    std::string punct = last.substr(cut);
    last.resize(cut);
    if (last.empty()) words.pop_back();
    words.push_back(std::move(punct));
  }
  return words;
}

inline double coverage(const std::vector<FallbackResponse>& results) {
  if (results.empty()) throw MetricError("coverage of an empty corpus is undefined");
  std::size_t matched = 0;
  for (const auto& r : results) matched += r.used_default ? 0 : 1;
  return static_cast<double>(matched) / static_cast<double>(results.size());
}

struct LengthStats {
  double mean = 0.0;
  double variance = 0.0;
};

// Mean and population variance of token counts.
inline LengthStats length_stats(const std::vector<std::string>& texts) {
  if (texts.empty()) throw MetricError("length statistics of an empty corpus are undefined");
  std::vector<double> counts;
  counts.reserve(texts.size());
  double sum = 0.0;
  for (const auto& t : texts) {
    counts.push_back(static_cast<double>(metric_tokens(t).size()));
    sum += counts.back();
  }
  const double n = static_cast<double>(counts.size());
  LengthStats out;
  out.mean = sum / n;
  double sq = 0.0;
  for (double c : counts) sq += (c - out.mean) * (c - out.mean);
  out.variance = sq / n;
  return out;
}

// Body of the response with the recorded prefix and suffix removed.
inline std::string response_body(const FallbackResponse& r) {
  std::string_view text = strings::trim(r.text);
  const std::string_view prefix = strings::trim(r.prefix);
  if (!strings::starts_with(text, prefix)) {
    throw ProvenanceError("response does not start with its prefix '" + std::string(prefix) + "'");
  }
  text.remove_prefix(prefix.size());
  const std::string_view suffix = strings::trim(r.suffix);
  if (!suffix.empty()) {
    if (!strings::ends_with(text, suffix)) {
      throw ProvenanceError("response does not end with its suffix '" + std::string(suffix) + "'");
    }
    text.remove_suffix(suffix.size());
  }
  return std::string(strings::trim(text));
}

namespace metrics_detail {

inline std::set<std::string> word_types(std::string_view text) {
  std::set<std::string> out;
  for (const auto& tok : metric_tokens(strings::lower(text))) {
    if (tok.size() == 1 ? is_terminal(tok[0]) : tok.find_first_not_of(".?!") == std::string::npos) continue;
    out.insert(tok);
  }
  return out;
}

}  // namespace metrics_detail

// Body word types absent from the question, both sides lower-cased.
inline std::size_t novel_words(std::string_view question, const FallbackResponse& response) {
  const auto body = metrics_detail::word_types(response_body(response));
  const auto known = metrics_detail::word_types(question);
  std::size_t n = 0;
  for (const auto& w : body) n += known.contains(w) ? 0 : 1;
  return n;
}

struct MetricsReport {
  std::size_t n = 0;
  std::size_t matched = 0;
  double coverage = 0.0;
  double avg_len_question = 0.0;
  double avg_len_response = 0.0;
  double len_var_question = 0.0;
  double len_var_response = 0.0;
  double avg_novel_words = 0.0;
};

struct EvalItem {
  std::string question;
  FallbackResponse response;
};

// Novel words are averaged over matched results only; a corpus with no match
// reports 0 there.
inline MetricsReport report(const std::vector<EvalItem>& corpus) {
  if (corpus.empty()) throw MetricError("report of an empty corpus is undefined");
  MetricsReport out;
  out.n = corpus.size();
  std::vector<FallbackResponse> results;
  std::vector<std::string> questions;
  std::vector<std::string> responses;
  double novel = 0.0;
  for (const auto& item : corpus) {
    results.push_back(item.response);
    questions.push_back(item.question);
    responses.push_back(item.response.text);
    if (!item.response.used_default) {
      ++out.matched;
      novel += static_cast<double>(novel_words(item.question, item.response));
    }
  }
  out.coverage = coverage(results);
  const auto q = length_stats(questions);
  const auto r = length_stats(responses);
  out.avg_len_question = q.mean;
  out.len_var_question = q.variance;
  out.avg_len_response = r.mean;
  out.len_var_response = r.variance;
  out.avg_novel_words = out.matched ? novel / static_cast<double>(out.matched) : 0.0;
  return out;
}

inline std::string format_fixed(double v, int decimals = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

inline std::string format_report(const MetricsReport& m) {
  std::string out;
  auto line = [&](std::string_view key, const std::string& value) {
    out += key;
    out += ": ";
    out += value;
    out += '\n';
  };
  line("n", std::to_string(m.n));
  line("matched", std::to_string(m.matched));
  line("coverage", format_fixed(m.coverage));
  line("avg_len_question", format_fixed(m.avg_len_question));
  line("avg_len_response", format_fixed(m.avg_len_response));
  line("len_var_question", format_fixed(m.len_var_question));
  line("len_var_response", format_fixed(m.len_var_response));
  line("avg_novel_words", format_fixed(m.avg_novel_words));
  return out;
}

// Annotation sheets: tab-separated, header
//   question  response  grammatical  relevance_1_to_5
// Tabs and newlines inside cells are replaced with spaces.
inline constexpr std::string_view kSheetHeader = "question\tresponse\tgrammatical\trelevance_1_to_5";

namespace metrics_detail {

inline std::string cell(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

}  // namespace metrics_detail

inline std::string annotation_sheet(const std::vector<EvalItem>& corpus, std::uint64_t seed) {
  std::vector<std::size_t> order(corpus.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(seed);
  rng.shuffle(order);
  std::string out(kSheetHeader);
  out += '\n';
  for (std::size_t i : order) {
    out += metrics_detail::cell(corpus[i].question);
    out += '\t';
    out += metrics_detail::cell(corpus[i].response.text);
    out += "\t\t\n";
  }
  return out;
}

inline void export_annotation_sheet(const std::vector<EvalItem>& corpus, const std::string& path, std::uint64_t seed) {
  strings::write_file(path, annotation_sheet(corpus, seed));
}

struct HumanScores {
  std::size_t rated = 0;
  double percent_grammatical = 0.0;
  double average_relevance = 0.0;
};

// %GC over rows with a 0/1 grammaticality mark, ARS over rows with a 1..5 relevance score.
inline HumanScores import_annotation_sheet(std::string_view text) {
  const auto lines = strings::split(text, '\n');
  if (lines.empty() || strings::trim(lines.front()) != kSheetHeader) {
    throw IngestionError("annotation sheet lacks its header");
  }
  std::size_t g_n = 0, g_yes = 0, r_n = 0;
  double r_sum = 0.0;
  std::size_t rows = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::string line = lines[i];
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (strings::trim(line).empty()) continue;
    const auto cells = strings::split(line, '\t');
    if (cells.size() != 4) throw IngestionError("sheet row " + std::to_string(i + 1) + " does not have 4 columns");
    ++rows;
    const auto g = strings::trim(cells[2]);
    if (g == "1" || g == "0") {
      ++g_n;
      g_yes += g == "1" ? 1 : 0;
    } else if (!g.empty()) {
      throw IngestionError("sheet row " + std::to_string(i + 1) + ": grammatical must be 0 or 1");
    }
    const auto r = strings::trim(cells[3]);
    if (r.size() == 1 && r[0] >= '1' && r[0] <= '5') {
      ++r_n;
      r_sum += r[0] - '0';
    } else if (!r.empty()) {
      throw IngestionError("sheet row " + std::to_string(i + 1) + ": relevance must be 1..5");
    }
  }
  HumanScores out;
  out.rated = rows;
  if (g_n == 0 && r_n == 0) throw MetricError("annotation sheet has no ratings");
  out.percent_grammatical = g_n ? 100.0 * static_cast<double>(g_yes) / static_cast<double>(g_n) : 0.0;
  out.average_relevance = r_n ? r_sum / static_cast<double>(r_n) : 0.0;
  return out;
}

}  // namespace idk
