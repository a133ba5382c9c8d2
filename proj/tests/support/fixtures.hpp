#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "idk/conllu.hpp"
#include "idk/engine.hpp"
#include "idk/metrics.hpp"
#include "idk/pattern.hpp"
#include "idk/strings.hpp"

namespace idk::test {

inline std::string data_path(const std::string& name) { return std::string(IDK_TEST_DATA) + "/" + name; }
inline std::string repo_path(const std::string& name) { return std::string(IDK_DATA_DIR) + "/" + name; }

inline std::vector<Sentence> load(const std::string& name) { return read_conllu(strings::read_file(data_path(name))); }

inline const std::vector<Sentence>& gold() {
  static const std::vector<Sentence> kGold = load("gold.conllu");
  return kGold;
}

inline const std::vector<Sentence>& corpus200() {
  static const std::vector<Sentence> kCorpus = load("corpus200.conllu");
  return kCorpus;
}

inline const std::vector<Sentence>& mini_qqp() {
  static const std::vector<Sentence> kParses = load("mini_qqp.conllu");
  return kParses;
}

inline const Sentence& gold(const std::string& id) {
  for (const auto& s : gold()) {
    if (s.id == id) return s;
  }
  throw LookupError("no gold sentence '" + id + "'");
}

inline const TemplatePool& shipped_pool() {
  static const TemplatePool kPool = TemplatePool::from_file(repo_path("templates/default.tpl"));
  return kPool;
}

inline ResponseConfig shipped_config() { return load_pools(repo_path("config/default_pools.cfg")); }

// Single-entry pools: every draw is forced, and no entity is replaced.
inline ResponseConfig pinned_config(const std::string& prefix, const std::string& suffix = "") {
  ResponseConfig c = ResponseConfig::defaults();
  c.prefix_pool = {prefix};
  c.suffix_pool = {suffix};
  c.ne_substitution_prob = 0.0;
  return c;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("idk-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::vector<std::string> words(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) out.push_back(t.form);
  return out;
}

// Question text as the batch command records it.
inline std::string question_of(const Sentence& s) {
  if (!s.text.empty()) return s.text;
  return strings::join(words(s.tokens), " ");
}

// Shipped engine over `sentences`, work item i answered with counter i.
inline std::vector<EvalItem> corpus_results(const std::vector<Sentence>& sentences) {
  const Engine engine(shipped_pool(), shipped_config());
  std::vector<EvalItem> out;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    out.push_back(EvalItem{question_of(sentences[i]), engine.respond(sentences[i], i)});
  }
  return out;
}

}  // namespace idk::test
