#pragma once

// Dependency templates: a small declarative pattern language over UD trees.
//
// A template file is a sequence of blocks:
//
//   [T-MODAL]
//   class    = WH question with a modal auxiliary ("How can I X?")
//   priority = 20
//   frame    = plain
//   root: upos=VERB
//   wh:   deprel=advmod,obj lemma=how,where head=root
//   aux:  deprel=aux lemma=can,could head=root before=subj
//   subj: deprel=nsubj head=root
//   plan     = EMIT(wh) EMIT_SUBTREE(subj) EMIT(aux) EMIT_SUBTREE(root)
//
// Keyword lines use `=`, node lines use `slot:`. Node attributes:
//   upos, deprel, lemma   comma-separated alternatives
//   feats                 required features, `Key=Value|Key=Value`
//   head                  slot this node must attach to
//   before                slot this node must precede on the surface
//   initial=yes           node is the first non-punctuation word
// Lemma tests fall back to the lower-cased form when a word has no lemma.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "idk/conllu.hpp"
#include "idk/error.hpp"
#include "idk/strings.hpp"

namespace idk {

inline constexpr std::string_view kRootSlot = "root";

enum class Directive { kEmit, kEmitSubtree, kMoveCopFinal, kDropDo, kReinflect };

inline std::string_view directive_name(Directive d) {
  switch (d) {
    case Directive::kEmit: return "EMIT";
    case Directive::kEmitSubtree: return "EMIT_SUBTREE";
    case Directive::kMoveCopFinal: return "MOVE_COP_FINAL";
    case Directive::kDropDo: return "DROP_DO";
    case Directive::kReinflect: return "REINFLECT";
  }
  return "?";
}

struct PlanStep {
  Directive directive;
  std::vector<std::string> slots;

  const std::string& slot() const { return slots.front(); }
};

// Which prefix pool frames the realized clause.
enum class Frame { kPlain, kWhether };

struct NodeConstraint {
  std::string slot;
  std::set<std::string> upos;
  std::set<std::string> deprel;
  std::set<std::string> lemma;
  AttributeList feats;
  std::optional<std::string> attaches_to;
  std::optional<std::string> before;
  bool initial = false;

  bool accepts(const Token& t) const {
    if (!upos.empty() && !upos.contains(t.upos)) return false;
    if (!deprel.empty() && !deprel.contains(t.deprel)) return false;
    if (!lemma.empty() && !lemma.contains(strings::lower(t.lemma.empty() ? t.form : t.lemma))) return false;
    for (const auto& [key, value] : feats.entries()) {
      if (!t.feats.has(key, value)) return false;
    }
    return true;
  }
};

struct Template {
  std::string id;
  std::string question_class;
  int priority = 0;
  Frame frame = Frame::kPlain;
  std::vector<NodeConstraint> constraints;
  std::vector<PlanStep> plan;
  // Constraint positions in the order the matcher binds them: root, then by attachment.
  std::vector<std::size_t> search_order;

  const NodeConstraint* constraint(std::string_view slot) const {
    for (const auto& c : constraints) {
      if (c.slot == slot) return &c;
    }
    return nullptr;
  }
};

// Raw, unvalidated description of one template, as read from a template file.
struct TemplateSpec {
  std::string id;
  std::string question_class;
  std::string priority = "0";
  std::string frame = "plain";
  std::vector<std::pair<std::string, std::string>> nodes;  // slot -> attribute text
  std::string plan;
};

class Bindings {
 public:
  void bind(const std::string& slot, int index) { slots_[slot] = index; }
  void unbind(const std::string& slot) { slots_.erase(slot); }

  std::optional<int> get(std::string_view slot) const {
    const auto it = slots_.find(std::string(slot));
    if (it == slots_.end()) return std::nullopt;
    return it->second;
  }

  bool bound_index(int index) const {
    return std::any_of(slots_.begin(), slots_.end(), [&](const auto& kv) { return kv.second == index; });
  }

  std::size_t size() const { return slots_.size(); }
  const std::map<std::string, int>& map() const { return slots_; }

  friend bool operator==(const Bindings&, const Bindings&) = default;

 private:
  std::map<std::string, int> slots_;
};

namespace pattern_detail {

// UD v1 and v2 names for the same relation.
inline const std::vector<std::pair<std::string, std::string>>& deprel_aliases() {
  static const std::vector<std::pair<std::string, std::string>> kAliases = {
      {"obj", "dobj"}, {"nsubj:pass", "nsubjpass"}, {"aux:pass", "auxpass"}, {"csubj:pass", "csubjpass"}};
  return kAliases;
}

inline std::set<std::string> parse_alternatives(std::string_view text, bool lowercase) {
  std::set<std::string> out;
  for (const auto& part : strings::split(text, ',')) {
    const auto v = strings::trim(part);
    if (!v.empty()) out.insert(lowercase ? strings::lower(v) : std::string(v));
  }
  return out;
}

inline std::optional<Directive> parse_directive(std::string_view name) {
  if (name == "EMIT") return Directive::kEmit;
  if (name == "EMIT_SUBTREE") return Directive::kEmitSubtree;
  if (name == "MOVE_COP_FINAL") return Directive::kMoveCopFinal;
  if (name == "DROP_DO") return Directive::kDropDo;
  if (name == "REINFLECT") return Directive::kReinflect;
  return std::nullopt;
}

inline std::vector<PlanStep> parse_plan(const std::string& id, std::string_view text) {
  std::vector<PlanStep> plan;
  std::size_t pos = 0;
  while (true) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size()) break;
    const auto open = text.find('(', pos);
    const auto close = text.find(')', pos);
    if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
      throw CompilationError(id, "malformed plan step near '" + std::string(text.substr(pos)) + "'");
    }
    const auto name = strings::trim(text.substr(pos, open - pos));
    const auto directive = parse_directive(name);
    if (!directive) throw CompilationError(id, "unknown directive '" + std::string(name) + "'");
    PlanStep step{*directive, {}};
    for (const auto& arg : strings::split(text.substr(open + 1, close - open - 1), ',')) {
      const auto a = strings::trim(arg);
      if (a.empty()) throw CompilationError(id, "empty argument in " + std::string(name));
      step.slots.emplace_back(a);
    }
    const std::size_t max_args = *directive == Directive::kMoveCopFinal ? 2 : 1;
    if (step.slots.empty() || step.slots.size() > max_args) {
      throw CompilationError(id, std::string(name) + " takes " + (max_args == 2 ? "1 or 2" : "1") + " slot argument(s)");
    }
    plan.push_back(std::move(step));
    pos = close + 1;
  }
  return plan;
}

inline NodeConstraint parse_node(const std::string& id, const std::string& slot, std::string_view attrs) {
  NodeConstraint c;
  c.slot = slot;
  for (const auto& item : strings::split_whitespace(attrs)) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size()) {
      throw CompilationError(id, "malformed attribute '" + item + "' on slot '" + slot + "'");
    }
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    if (key == "upos") {
      c.upos = parse_alternatives(value, false);
    } else if (key == "deprel") {
      c.deprel = parse_alternatives(value, false);
    } else if (key == "lemma") {
      c.lemma = parse_alternatives(value, true);
    } else if (key == "feats") {
      c.feats = AttributeList::parse(value);
      for (const auto& [k, v] : c.feats.entries()) {
        if (v.empty()) throw CompilationError(id, "feature '" + k + "' on slot '" + slot + "' has no value");
      }
    } else if (key == "head") {
      c.attaches_to = value;
    } else if (key == "before") {
      c.before = value;
    } else if (key == "initial") {
      if (value != "yes" && value != "no") {
        throw CompilationError(id, "initial must be yes or no on slot '" + slot + "'");
      }
      c.initial = value == "yes";
    } else {
      throw CompilationError(id, "unknown attribute '" + key + "' on slot '" + slot + "'");
    }
  }
  for (const auto& [a, b] : deprel_aliases()) {
    if (c.deprel.contains(a)) c.deprel.insert(b);
    if (c.deprel.contains(b)) c.deprel.insert(a);
  }
  return c;
}

}  // namespace pattern_detail

inline Template compile_template(const TemplateSpec& spec) {
  using namespace pattern_detail;
  const std::string& id = spec.id.empty() ? std::string("<unnamed>") : spec.id;
  if (spec.id.empty()) throw CompilationError(id, "missing template id");

  Template t;
  t.id = spec.id;
  t.question_class = spec.question_class;
  try {
    std::size_t used = 0;
    t.priority = std::stoi(spec.priority, &used);
    if (used != spec.priority.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw CompilationError(id, "priority '" + spec.priority + "' is not an integer");
  }
  if (spec.frame == "plain") {
    t.frame = Frame::kPlain;
  } else if (spec.frame == "whether") {
    t.frame = Frame::kWhether;
  } else {
    throw CompilationError(id, "unknown frame '" + spec.frame + "'");
  }

  std::set<std::string> declared;
  for (const auto& [slot, attrs] : spec.nodes) {
    if (!declared.insert(slot).second) throw CompilationError(id, "duplicate slot '" + slot + "'");
    t.constraints.push_back(parse_node(id, slot, attrs));
  }
  if (!declared.contains(std::string(kRootSlot))) throw CompilationError(id, "no root anchor constraint");

  for (const auto& c : t.constraints) {
    if (c.attaches_to) {
      if (c.slot == kRootSlot) throw CompilationError(id, "the root anchor cannot attach to another slot");
      if (!declared.contains(*c.attaches_to)) {
        throw CompilationError(id, "slot '" + c.slot + "' attaches to undeclared slot '" + *c.attaches_to + "'");
      }
      if (*c.attaches_to == c.slot) throw CompilationError(id, "slot '" + c.slot + "' attaches to itself");
    }
    if (c.before && (!declared.contains(*c.before) || *c.before == c.slot)) {
      throw CompilationError(id, "slot '" + c.slot + "' has invalid ordering reference '" + *c.before + "'");
    }
  }

  // Root first, then every slot whose head is already placed, then free slots.
  std::set<std::string> placed;
  std::vector<bool> done(t.constraints.size(), false);
  for (std::size_t i = 0; i < t.constraints.size(); ++i) {
    if (t.constraints[i].slot == kRootSlot) {
      t.search_order.push_back(i);
      placed.insert(t.constraints[i].slot);
      done[i] = true;
    }
  }
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t i = 0; i < t.constraints.size(); ++i) {
      const auto& c = t.constraints[i];
      if (done[i] || (c.attaches_to && !placed.contains(*c.attaches_to))) continue;
      if (!c.attaches_to) continue;
      t.search_order.push_back(i);
      placed.insert(c.slot);
      done[i] = progress = true;
    }
  }
  for (std::size_t i = 0; i < t.constraints.size(); ++i) {
    if (done[i]) continue;
    if (t.constraints[i].attaches_to) throw CompilationError(id, "attachment cycle through slot '" + t.constraints[i].slot + "'");
    t.search_order.push_back(i);
  }

  t.plan = parse_plan(id, spec.plan);
  if (t.plan.empty()) throw CompilationError(id, "empty realization plan");
  bool emits = false;
  for (const auto& step : t.plan) {
    for (const auto& slot : step.slots) {
      if (!declared.contains(slot)) throw CompilationError(id, "plan references undeclared slot '" + slot + "'");
    }
    emits = emits || step.directive == Directive::kEmit || step.directive == Directive::kEmitSubtree;
  }
  if (!emits) throw CompilationError(id, "plan emits nothing");
  return t;
}

inline std::vector<TemplateSpec> parse_template_file(std::string_view text) {
  std::vector<TemplateSpec> specs;
  std::size_t line_no = 0;
  for (const auto& raw : strings::split(text, '\n')) {
    ++line_no;
    const auto line = strings::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto fail = [&](const std::string& what) -> CompilationError {
      return CompilationError(specs.empty() ? "<file>" : specs.back().id,
                              "line " + std::to_string(line_no) + ": " + what);
    };
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) throw fail("malformed template header");
      specs.emplace_back();
      specs.back().id = std::string(strings::trim(line.substr(1, line.size() - 2)));
      continue;
    }
    if (specs.empty()) throw fail("content before the first template header");
    TemplateSpec& spec = specs.back();
    const auto colon = line.find(':');
    const auto eq = line.find('=');
    if (eq != std::string_view::npos && (colon == std::string_view::npos || eq < colon)) {
      const std::string key(strings::trim(line.substr(0, eq)));
      const std::string value(strings::trim(line.substr(eq + 1)));
      if (key == "class") {
        spec.question_class = value;
      } else if (key == "priority") {
        spec.priority = value;
      } else if (key == "frame") {
        spec.frame = value;
      } else if (key == "plan") {
        spec.plan = value;
      } else {
        throw fail("unknown key '" + key + "'");
      }
    } else if (colon != std::string_view::npos) {
      spec.nodes.emplace_back(std::string(strings::trim(line.substr(0, colon))),
                              std::string(strings::trim(line.substr(colon + 1))));
    } else {
      throw fail("unrecognised line");
    }
  }
  return specs;
}

// An immutable, compiled template pool with a fingerprint of its source.
class TemplatePool {
 public:
  TemplatePool() = default;

  static TemplatePool from_text(std::string_view text) {
    TemplatePool pool;
    std::set<std::string> ids;
    for (const auto& spec : parse_template_file(text)) {
      if (!ids.insert(spec.id).second) throw CompilationError(spec.id, "duplicate template id");
      pool.templates_.push_back(compile_template(spec));
    }
    pool.fingerprint_ = strings::hex64(strings::fnv1a64(text));
    return pool;
  }

  static TemplatePool from_file(const std::string& path) { return from_text(strings::read_file(path)); }

  explicit TemplatePool(std::vector<Template> templates) : templates_(std::move(templates)) {}

  const std::vector<Template>& templates() const { return templates_; }
  std::size_t size() const { return templates_.size(); }
  bool empty() const { return templates_.empty(); }
  const std::string& fingerprint() const { return fingerprint_; }

  const Template* find(std::string_view id) const {
    for (const auto& t : templates_) {
      if (t.id == id) return &t;
    }
    return nullptr;
  }

 private:
  std::vector<Template> templates_;
  std::string fingerprint_;
};

namespace pattern_detail {

inline bool ordering_ok(const Template& tpl, const Bindings& b) {
  for (const auto& c : tpl.constraints) {
    if (!c.before) continue;
    const auto self = b.get(c.slot);
    const auto other = b.get(*c.before);
    if (self && other && !(*self < *other)) return false;
  }
  return true;
}

inline bool is_initial(const Sentence& s, int index) {
  for (int i = 1; i < index; ++i) {
    const Token& t = s.at(i);
    if (t.upos != "PUNCT" && t.deprel != "punct") return false;
  }
  return true;
}

inline bool search(const Sentence& s, const Template& tpl, std::size_t depth, Bindings& b) {
  if (depth == tpl.search_order.size()) return true;
  const NodeConstraint& c = tpl.constraints[tpl.search_order[depth]];
  std::vector<int> candidates;
  if (c.slot == kRootSlot) {
    candidates.push_back(s.root());
  } else if (c.attaches_to) {
    candidates = s.children(*b.get(*c.attaches_to));
  } else {
    for (const auto& t : s.tokens) candidates.push_back(t.index);
  }
  for (int idx : candidates) {
    if (b.bound_index(idx) || !c.accepts(s.at(idx))) continue;
    if (c.initial && !is_initial(s, idx)) continue;
    b.bind(c.slot, idx);
    if (ordering_ok(tpl, b) && search(s, tpl, depth + 1, b)) return true;
    b.unbind(c.slot);
  }
  return false;
}

}  // namespace pattern_detail

// Backtracking search; among all satisfying assignments returns the one that is
// lexicographically smallest in surface index along the search order.
inline std::optional<Bindings> match_template(const Sentence& sentence, const Template& tpl) {
  Bindings b;
  if (pattern_detail::search(sentence, tpl, 0, b)) return b;
  return std::nullopt;
}

struct Match {
  const Template* tpl;
  Bindings bindings;
};

// Templates are tried by ascending priority, ties broken by pool order.
inline std::optional<Match> first_match(const Sentence& sentence, const std::vector<Template>& pool) {
  if (pool.empty()) throw ContractError("first_match requires a non-empty template pool");
  std::vector<const Template*> ordered;
  ordered.reserve(pool.size());
  for (const auto& t : pool) ordered.push_back(&t);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const Template* a, const Template* b) { return a->priority < b->priority; });
  for (const Template* t : ordered) {
    if (auto b = match_template(sentence, *t)) return Match{t, std::move(*b)};
  }
  return std::nullopt;
}

}  // namespace idk
