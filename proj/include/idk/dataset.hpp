#pragma once

// IDKD corpus construction: paraphrase ingestion, answerable-question
// filtering, paraphrase pairing and seeded train/validation splits.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "idk/conllu.hpp"
#include "idk/engine.hpp"
#include "idk/error.hpp"
#include "idk/rng.hpp"
#include "idk/strings.hpp"

namespace idk {

struct ParaphraseRecord {
  std::string id;
  std::string qid1;
  std::string qid2;
  std::string question1;
  std::string question2;
  bool is_duplicate = false;
};

struct IngestionStats {
  std::size_t rows = 0;
  std::size_t skipped_label = 0;
  std::size_t skipped_empty = 0;
};

namespace dataset_detail {

inline std::optional<bool> parse_label(std::string_view raw) {
  raw = strings::trim(raw);
  if (raw == "1" || raw == "true") return true;
  if (raw == "0" || raw == "false") return false;
  return std::nullopt;
}

inline std::string json_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return {};
  const auto& v = j.at(key);
  return v.is_string() ? v.get<std::string>() : v.dump();
}

}  // namespace dataset_detail

// Reads a QQP-layout TSV (header `id qid1 qid2 question1 question2 is_duplicate`)
// or a JSON-lines file with the same keys; the format is chosen by the first
// character of the file. Records with an unreadable label or an empty question
// are skipped and counted in `stats`.
inline std::vector<ParaphraseRecord> parse_paraphrase_corpus(std::string_view text, IngestionStats* stats = nullptr) {
  IngestionStats local;
  IngestionStats& st = stats ? *stats : local;
  std::vector<ParaphraseRecord> out;

  auto keep = [&](ParaphraseRecord r, std::string_view label) {
    ++st.rows;
    const auto dup = dataset_detail::parse_label(label);
    if (!dup) {
      ++st.skipped_label;
      return;
    }
    if (strings::trim(r.question1).empty() || strings::trim(r.question2).empty()) {
      ++st.skipped_empty;
      return;
    }
    r.is_duplicate = *dup;
    out.push_back(std::move(r));
  };

  const auto body = strings::trim(text);
  if (body.empty()) throw IngestionError("paraphrase corpus has no header");

  if (body.front() == '{') {
    std::size_t line_no = 0;
    for (const auto& raw : strings::split(text, '\n')) {
      ++line_no;
      const auto line = strings::trim(raw);
      if (line.empty()) continue;
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::exception& e) {
        throw IngestionError("line " + std::to_string(line_no) + ": " + e.what());
      }
      if (!j.is_object() || !j.contains("question1") || !j.contains("question2") || !j.contains("is_duplicate")) {
        throw IngestionError("line " + std::to_string(line_no) + ": record lacks question1/question2/is_duplicate");
      }
      ParaphraseRecord r;
      r.id = dataset_detail::json_field(j, "id");
      r.qid1 = dataset_detail::json_field(j, "qid1");
      r.qid2 = dataset_detail::json_field(j, "qid2");
      r.question1 = dataset_detail::json_field(j, "question1");
      r.question2 = dataset_detail::json_field(j, "question2");
      const auto& label = j.at("is_duplicate");
      std::string label_text = label.is_string() ? label.get<std::string>() : label.dump();
      keep(std::move(r), label_text);
    }
    return out;
  }

  const auto lines = strings::split(text, '\n');
  std::map<std::string, std::size_t> column;
  const auto header = strings::split(lines.front(), '\t');
  for (std::size_t i = 0; i < header.size(); ++i) column[std::string(strings::trim(header[i]))] = i;
  for (const char* key : {"id", "qid1", "qid2", "question1", "question2", "is_duplicate"}) {
    if (!column.contains(key)) throw IngestionError(std::string("header lacks column '") + key + "'");
  }
  for (std::size_t n = 1; n < lines.size(); ++n) {
    std::string line = lines[n];
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = strings::split(line, '\t');
    if (cells.size() < header.size()) {
      ++st.rows;
      ++st.skipped_label;
      continue;
    }
    ParaphraseRecord r;
    r.id = cells[column["id"]];
    r.qid1 = cells[column["qid1"]];
    r.qid2 = cells[column["qid2"]];
    r.question1 = cells[column["question1"]];
    r.question2 = cells[column["question2"]];
    keep(std::move(r), cells[column["is_duplicate"]]);
  }
  return out;
}

inline std::vector<ParaphraseRecord> load_paraphrase_corpus(const std::string& path, IngestionStats* stats = nullptr) {
  std::string text;
  try {
    text = strings::read_file(path);
  } catch (const IoError& e) {
    throw IngestionError(e.what());
  }
  return parse_paraphrase_corpus(text, stats);
}

// Pre-parsed questions, found by question id (the sentence's sent_id) or,
// failing that, by exact question text.
class ParseLookup {
 public:
  ParseLookup() = default;
  explicit ParseLookup(std::vector<Sentence> sentences) : sentences_(std::move(sentences)) {
    for (std::size_t i = 0; i < sentences_.size(); ++i) {
      if (!sentences_[i].id.empty()) by_id_.emplace(sentences_[i].id, i);
      if (!sentences_[i].text.empty()) by_text_.emplace(sentences_[i].text, i);
    }
  }

  static ParseLookup from_file(const std::string& path) { return ParseLookup(read_conllu(strings::read_file(path))); }

  const Sentence* find(const std::string& qid, const std::string& text) const {
    if (!qid.empty()) {
      if (const auto it = by_id_.find(qid); it != by_id_.end()) return &sentences_[it->second];
    }
    if (const auto it = by_text_.find(std::string(strings::trim(text))); it != by_text_.end()) return &sentences_[it->second];
    return nullptr;
  }

  std::size_t size() const { return sentences_.size(); }

 private:
  std::vector<Sentence> sentences_;
  std::map<std::string, std::size_t> by_id_;
  std::map<std::string, std::size_t> by_text_;
};

struct IdkdPair {
  std::string query;
  std::string response;
  std::string source_id;
  std::string template_id;

  friend bool operator==(const IdkdPair&, const IdkdPair&) = default;
};

inline nlohmann::json to_json(const IdkdPair& p) {
  return nlohmann::json{{"query", p.query}, {"response", p.response}, {"source_id", p.source_id}, {"template_id", p.template_id}};
}

inline IdkdPair pair_from_json(const nlohmann::json& j) {
  return IdkdPair{j.at("query").get<std::string>(), j.at("response").get<std::string>(),
                  j.at("source_id").get<std::string>(), j.at("template_id").get<std::string>()};
}

struct BuildOptions {
  bool symmetric = true;
};

struct BuildStats {
  std::size_t records = 0;
  std::size_t duplicates = 0;
  std::size_t unresolved = 0;
  std::size_t unmatched = 0;
  std::size_t removed_duplicate_pairs = 0;
};

// Each question side gets its own stream, Rng::derived(seed, 2 * record + side),
// so a pair's response does not depend on how the other records went.
inline std::vector<IdkdPair> build_idkd(const std::vector<ParaphraseRecord>& records, const ParseLookup& parses,
                                        const Engine& engine, std::uint64_t seed, const BuildOptions& options = {},
                                        BuildStats* stats = nullptr) {
  BuildStats local;
  BuildStats& st = stats ? *stats : local;
  std::vector<IdkdPair> out;
  std::set<std::pair<std::string, std::string>> seen;

  auto answer = [&](const std::string& qid, const std::string& question, std::uint64_t stream) -> std::optional<FallbackResponse> {
    const Sentence* s = parses.find(qid, question);
    if (!s) {
      ++st.unresolved;
      return std::nullopt;
    }
    Rng rng = Rng::derived(seed, stream);
    auto r = engine.respond(*s, rng);
    if (r.used_default || !r.template_id) {
      ++st.unmatched;
      return std::nullopt;
    }
    return r;
  };

  auto emit = [&](const std::string& query, const FallbackResponse& r, const std::string& source_id) {
    if (!seen.emplace(query, r.text).second) {
      ++st.removed_duplicate_pairs;
      return;
    }
    out.push_back(IdkdPair{query, r.text, source_id, *r.template_id});
  };

  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    ++st.records;
    if (!rec.is_duplicate) continue;
    ++st.duplicates;
    if (const auto r = answer(rec.qid1, rec.question1, 2 * static_cast<std::uint64_t>(i))) {
      emit(rec.question2, *r, rec.qid1.empty() ? rec.id + ":1" : rec.qid1);
    }
    if (!options.symmetric) continue;
    if (const auto r = answer(rec.qid2, rec.question2, 2 * static_cast<std::uint64_t>(i) + 1)) {
      emit(rec.question1, *r, rec.qid2.empty() ? rec.id + ":2" : rec.qid2);
    }
  }
  return out;
}

struct Split {
  std::vector<IdkdPair> train;
  std::vector<IdkdPair> validation;
};

inline Split split_idkd(std::vector<IdkdPair> pairs, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw ContractError("train_fraction must lie in (0, 1)");
  Split out;
  if (pairs.empty()) return out;
  Rng rng(seed);
  rng.shuffle(pairs);
  const auto n_train = static_cast<std::size_t>(std::floor(static_cast<double>(pairs.size()) * train_fraction));
  out.train.assign(pairs.begin(), pairs.begin() + static_cast<std::ptrdiff_t>(n_train));
  out.validation.assign(pairs.begin() + static_cast<std::ptrdiff_t>(n_train), pairs.end());
  return out;
}

struct DatasetHeader {
  std::uint64_t build_seed = 0;
  std::string engine_version;
  std::string template_hash;
};

// One JSON object per line; the first line is the header record.
inline std::string write_pairs_jsonl(const DatasetHeader& header, const std::vector<IdkdPair>& pairs) {
  std::string out = nlohmann::json{{"build_seed", header.build_seed},
                                   {"engine_version", header.engine_version},
                                   {"template_hash", header.template_hash}}
                        .dump();
  out += '\n';
  for (const auto& p : pairs) {
    out += to_json(p).dump();
    out += '\n';
  }
  return out;
}

inline std::pair<DatasetHeader, std::vector<IdkdPair>> read_pairs_jsonl(std::string_view text) {
  DatasetHeader header;
  std::vector<IdkdPair> pairs;
  bool first = true;
  std::size_t line_no = 0;
  for (const auto& raw : strings::split(text, '\n')) {
    ++line_no;
    if (strings::trim(raw).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(raw);
    } catch (const nlohmann::json::exception& e) {
      throw IngestionError("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (first) {
      if (!j.contains("build_seed")) throw IngestionError("pairs file lacks its header line");
      header.build_seed = j.at("build_seed").get<std::uint64_t>();
      header.engine_version = j.value("engine_version", "");
      header.template_hash = j.value("template_hash", "");
      first = false;
      continue;
    }
    pairs.push_back(pair_from_json(j));
  }
  if (first) throw IngestionError("pairs file is empty");
  return {header, pairs};
}

}  // namespace idk
