#pragma once

// The dependency-based responder: first matching template, realization,
// auxiliary repair, pronoun flip, NE substitution and prefix/suffix framing,
// with a default pool for questions no template covers.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "idk/conllu.hpp"
#include "idk/error.hpp"
#include "idk/pattern.hpp"
#include "idk/pronouns.hpp"
#include "idk/realize.hpp"
#include "idk/rng.hpp"
#include "idk/strings.hpp"

namespace idk {

inline constexpr std::string_view kEngineVersion = "idk-fallback/1.0.0";

struct ResponseConfig {
  std::vector<std::string> prefix_pool;
  std::vector<std::string> whether_prefix_pool;
  std::vector<std::string> suffix_pool;
  std::vector<std::string> default_pool;
  double ne_substitution_prob = 0.3;
  std::uint64_t seed = 0;

  // Attested pools; the empty suffix is listed three times so it dominates.
  static ResponseConfig defaults() {
    ResponseConfig c;
    c.prefix_pool = {"I am not sure",       "I'm not sure",     "I'm not really sure",
                     "I cannot be sure",    "I'm not actually sure", "I don't know"};
    c.whether_prefix_pool = {"I'm not sure whether", "I don't know if"};
    c.suffix_pool = {"", "", "", "Sorry about that.", "I wish I could help with that."};
    c.default_pool = {"I don't know the answer to that question.", "I'm not sure about that."};
    return c;
  }

  void validate() const {
    auto non_empty = [](const std::vector<std::string>& pool, std::string_view name) {
      if (pool.empty()) throw ConfigError(std::string(name) + " pool is empty");
      for (const auto& e : pool) {
        if (strings::trim(e).empty()) throw ConfigError(std::string(name) + " pool has an empty entry");
      }
    };
    non_empty(prefix_pool, "prefix");
    non_empty(whether_prefix_pool, "whether_prefix");
    non_empty(default_pool, "default");
    for (const auto& e : default_pool) {
      if (!strings::ends_with(strings::trim(e), ".")) throw ConfigError("default entry '" + e + "' must end with '.'");
    }
    for (const auto& e : suffix_pool) {
      if (!strings::trim(e).empty() && !strings::ends_with(strings::trim(e), ".")) {
        throw ConfigError("suffix entry '" + e + "' must end with '.'");
      }
    }
    if (!(ne_substitution_prob >= 0.0 && ne_substitution_prob <= 1.0)) {
      throw ConfigError("ne_substitution_prob must lie in [0, 1]");
    }
  }
};

namespace engine_detail {

inline std::string unquote(std::string_view raw, std::size_t line) {
  raw = strings::trim(raw);
  if (raw.size() < 2 || raw.front() != '"' || raw.back() != '"') {
    throw ConfigError("line " + std::to_string(line) + ": pool entries must be double-quoted");
  }
  std::string out;
  for (std::size_t i = 1; i + 1 < raw.size(); ++i) {
    if (raw[i] == '\\' && i + 2 < raw.size()) {
      out += raw[++i];
    } else {
      out += raw[i];
    }
  }
  return out;
}

}  // namespace engine_detail

// Pools file: `key = "value"` lines, repeated keys append to the pool.
//   prefix, whether_prefix, suffix, default   quoted strings
//   ne_substitution_prob                      number in [0, 1]
//   seed                                      unsigned integer
inline ResponseConfig parse_pools(std::string_view text) {
  ResponseConfig c;
  std::size_t line_no = 0;
  for (const auto& raw : strings::split(text, '\n')) {
    ++line_no;
    const auto line = strings::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    const std::string key(strings::trim(line.substr(0, eq)));
    const std::string_view value = strings::trim(line.substr(eq + 1));
    if (key == "prefix") {
      c.prefix_pool.push_back(engine_detail::unquote(value, line_no));
    } else if (key == "whether_prefix") {
      c.whether_prefix_pool.push_back(engine_detail::unquote(value, line_no));
    } else if (key == "suffix") {
      c.suffix_pool.push_back(engine_detail::unquote(value, line_no));
    } else if (key == "default") {
      c.default_pool.push_back(engine_detail::unquote(value, line_no));
    } else if (key == "ne_substitution_prob") {
      try {
        std::size_t used = 0;
        c.ne_substitution_prob = std::stod(std::string(value), &used);
        if (used != value.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line_no) + ": bad probability '" + std::string(value) + "'");
      }
    } else if (key == "seed") {
      try {
        std::size_t used = 0;
        c.seed = std::stoull(std::string(value), &used);
        if (used != value.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line_no) + ": bad seed '" + std::string(value) + "'");
      }
    } else {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  c.validate();
  return c;
}

inline ResponseConfig load_pools(const std::string& path) { return parse_pools(strings::read_file(path)); }

struct FallbackResponse {
  std::string text;
  std::optional<std::string> template_id;
  bool used_default = false;
  std::string prefix;
  std::string suffix;
  std::string body;

  friend bool operator==(const FallbackResponse&, const FallbackResponse&) = default;
};

inline nlohmann::json to_json(const FallbackResponse& r) {
  nlohmann::json j;
  j["text"] = r.text;
  j["template_id"] = r.template_id ? nlohmann::json(*r.template_id) : nlohmann::json(nullptr);
  j["used_default"] = r.used_default;
  j["prefix"] = r.prefix;
  j["suffix"] = r.suffix;
  j["body"] = r.body;
  return j;
}

inline FallbackResponse response_from_json(const nlohmann::json& j) {
  FallbackResponse r;
  r.text = j.at("text").get<std::string>();
  if (j.contains("template_id") && !j.at("template_id").is_null()) r.template_id = j.at("template_id").get<std::string>();
  r.used_default = j.at("used_default").get<bool>();
  r.prefix = j.value("prefix", "");
  r.suffix = j.value("suffix", "");
  r.body = j.value("body", "");
  return r;
}

// Dependency Based Response. Random draws, in order: one per replaceable
// named-entity span, then the prefix, then the suffix; or a single draw from
// the default pool when nothing matches.
inline FallbackResponse dbr(const Sentence& sentence, const TemplatePool& pool, const ResponseConfig& config, Rng& rng) {
  auto fallback = [&]() {
    FallbackResponse r;
    r.used_default = true;
    r.text = std::string(strings::trim(rng.pick(config.default_pool)));
    return r;
  };

  const auto match = first_match(sentence, pool.templates());
  if (!match) return fallback();

  auto tokens = realize_body(sentence, *match->tpl, match->bindings);
  tokens = handle_modals_aux(std::move(tokens), match->bindings);
  tokens = flip_pronouns(std::move(tokens));
  tokens = substitute_named_entity(tokens, rng, config.ne_substitution_prob);
  const std::string body(realize_detail::strip_terminal(detokenize(tokens)));
  // A template whose yield is punctuation only has nothing to say.
  if (body.empty()) return fallback();

  FallbackResponse r;
  r.template_id = match->tpl->id;
  r.body = body;
  r.prefix = std::string(strings::trim(
      rng.pick(match->tpl->frame == Frame::kWhether ? config.whether_prefix_pool : config.prefix_pool)));
  r.suffix = config.suffix_pool.empty() ? std::string() : std::string(strings::trim(rng.pick(config.suffix_pool)));
  r.text = compose(r.prefix, r.body, r.suffix);
  return r;
}

// Templates plus pools; immutable once built and safe to share across threads.
class Engine {
 public:
  Engine(TemplatePool pool, ResponseConfig config) : pool_(std::move(pool)), config_(std::move(config)) {
    if (pool_.empty()) throw ConfigError("template pool is empty");
    config_.validate();
  }

  static Engine from_files(const std::string& template_file, const std::string& pools_file) {
    return Engine(TemplatePool::from_file(template_file), load_pools(pools_file));
  }

  // Response for work item `counter` under the configured seed.
  FallbackResponse respond(const Sentence& s, std::uint64_t counter) const {
    Rng rng = Rng::derived(config_.seed, counter);
    return dbr(s, pool_, config_, rng);
  }

  FallbackResponse respond(const Sentence& s, Rng& rng) const { return dbr(s, pool_, config_, rng); }

  bool matches(const Sentence& s) const { return first_match(s, pool_.templates()).has_value(); }

  const TemplatePool& pool() const { return pool_; }
  const ResponseConfig& config() const { return config_; }
  Engine with_seed(std::uint64_t seed) const {
    ResponseConfig c = config_;
    c.seed = seed;
    return Engine(pool_, std::move(c));
  }

 private:
  TemplatePool pool_;
  ResponseConfig config_;
};

}  // namespace idk
