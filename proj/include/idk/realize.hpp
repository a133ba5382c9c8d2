#pragma once

// Surface realization of a matched template: executes the realization plan,
// repairs auxiliaries, substitutes named entities and detokenizes.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "idk/conllu.hpp"
#include "idk/error.hpp"
#include "idk/morphology.hpp"
#include "idk/pattern.hpp"
#include "idk/rng.hpp"
#include "idk/strings.hpp"

namespace idk {

namespace realize_detail {

inline bool is_negation(const Token& t) {
  const std::string f = strings::lower(t.form);
  return f == "n't" || f == "not" || strings::lower(t.lemma) == "not";
}

inline bool is_do_support(const Sentence& s, const Token& aux) {
  const std::string f = strings::lower(aux.form);
  const std::string l = strings::lower(aux.lemma);
  if (l != "do" && f != "do" && f != "does" && f != "did") return false;
  // A negated auxiliary stays: "why doesn't it work" -> "why it does not work".
  for (int sibling : s.children(aux.head)) {
    if (sibling != aux.index && is_negation(s.at(sibling))) return false;
  }
  for (int child : s.children(aux.index)) {
    if (is_negation(s.at(child))) return false;
  }
  return true;
}

inline morphology::Inflection inflection_of_do(const Token& aux) {
  const std::string f = strings::lower(aux.form);
  if (f == "did" || aux.feats.has("Tense", "Past")) return morphology::Inflection::kPast;
  if (f == "does") return morphology::Inflection::kThirdSingular;
  return morphology::Inflection::kBase;
}

enum class Agreement { kFirstSingular, kSingular, kPlural };

inline Agreement subject_agreement(const Sentence& s, const Token& subj) {
  const std::string f = strings::lower(subj.form);
  if (f == "i") return Agreement::kFirstSingular;
  if (f == "you" || f == "we" || f == "they" || f == "these" || f == "those") return Agreement::kPlural;
  if (f == "he" || f == "she" || f == "it" || f == "this" || f == "that") return Agreement::kSingular;
  for (int child : s.children(subj.index)) {
    if (s.at(child).deprel == "conj") return Agreement::kPlural;
  }
  if (subj.feats.has("Number", "Plur")) return Agreement::kPlural;
  if (subj.feats.has("Number", "Sing")) return Agreement::kSingular;
  if (subj.xpos == "NNS" || subj.xpos == "NNPS") return Agreement::kPlural;
  return Agreement::kSingular;
}

// Finite be-form agreeing with the subject; non-finite forms are left alone.
inline std::string agree_copula(const Token& cop, Agreement agreement) {
  const std::string f = strings::lower(cop.form);
  const bool finite_present = f == "is" || f == "are" || f == "am" || f == "'s" || f == "'re" || f == "'m";
  const bool finite_past = f == "was" || f == "were";
  if (finite_past || (cop.feats.has("Tense", "Past") && !finite_present)) {
    return agreement == Agreement::kPlural ? "were" : "was";
  }
  if (finite_present) {
    switch (agreement) {
      case Agreement::kFirstSingular: return "am";
      case Agreement::kSingular: return "is";
      case Agreement::kPlural: return "are";
    }
  }
  return cop.form;
}

inline bool root_punct(const Sentence& s, const Token& t) {
  return t.head == s.root() && (t.deprel == "punct" || t.upos == "PUNCT");
}

// The question's first word loses its capital once it is moved inside the clause.
inline void decapitalize_initial(Token& t) {
  if (t.index != 1 || t.upos == "PROPN" || t.form == "I" || t.form.empty()) return;
  if (t.form.size() > 1 && t.form == strings::match_case("XX", t.form)) return;
  t.form[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(t.form[0])));
}

inline int bound(const Bindings& b, const std::string& slot, const Template& tpl) {
  const auto idx = b.get(slot);
  if (!idx) throw RealizationError("template '" + tpl.id + "': plan uses unbound slot '" + slot + "'");
  return *idx;
}

}  // namespace realize_detail

// Executes the template's realization plan against the matched sentence.
//
// Every word is emitted at most once. EMIT, DROP_DO and MOVE_COP_FINAL own the
// single word of their slot; an EMIT_SUBTREE step owns the rest of its yield
// except words owned by a deeper EMIT_SUBTREE step. Root-attached punctuation is
// never emitted. Steps write their words in plan order, each in surface order,
// and the moved copula goes last.
inline std::vector<Token> realize_body(const Sentence& s, const Template& tpl, const Bindings& b) {
  using namespace realize_detail;
  const std::size_t n = s.size();
  std::vector<int> owner(n + 1, -1);
  std::set<int> dropped;
  std::optional<morphology::Inflection> reinflection;
  std::set<int> reinflect;
  std::optional<std::pair<int, int>> moved_copula;  // (copula, agreement subject)

  // Single-word owners first.
  for (std::size_t k = 0; k < tpl.plan.size(); ++k) {
    const PlanStep& step = tpl.plan[k];
    const int idx = bound(b, step.slot(), tpl);
    switch (step.directive) {
      case Directive::kEmit:
        owner[static_cast<std::size_t>(idx)] = static_cast<int>(k);
        break;
      case Directive::kDropDo:
        if (is_do_support(s, s.at(idx))) {
          dropped.insert(idx);
          reinflection = inflection_of_do(s.at(idx));
          owner[static_cast<std::size_t>(idx)] = -2;
        } else {
          owner[static_cast<std::size_t>(idx)] = static_cast<int>(k);
        }
        break;
      case Directive::kMoveCopFinal: {
        int subject = 0;
        if (step.slots.size() > 1) {
          subject = bound(b, step.slots[1], tpl);
        } else if (auto sb = b.get("subj")) {
          subject = *sb;
        } else {
          subject = bound(b, std::string(kRootSlot), tpl);
        }
        moved_copula = std::make_pair(idx, subject);
        owner[static_cast<std::size_t>(idx)] = -2;
        break;
      }
      case Directive::kReinflect:
        reinflect.insert(idx);
        break;
      case Directive::kEmitSubtree:
        break;
    }
  }

  // Subtree owners, shallowest anchor first so deeper anchors overwrite.
  std::vector<std::size_t> subtree_steps;
  for (std::size_t k = 0; k < tpl.plan.size(); ++k) {
    if (tpl.plan[k].directive == Directive::kEmitSubtree) subtree_steps.push_back(k);
  }
  auto depth = [&](int idx) {
    int d = 0;
    for (int cur = idx; cur != 0; cur = s.at(cur).head) ++d;
    return d;
  };
  std::stable_sort(subtree_steps.begin(), subtree_steps.end(), [&](std::size_t a, std::size_t c) {
    return depth(bound(b, tpl.plan[a].slot(), tpl)) < depth(bound(b, tpl.plan[c].slot(), tpl));
  });
  std::vector<bool> single(n + 1, false);
  for (std::size_t i = 1; i <= n; ++i) single[i] = owner[i] != -1;
  for (std::size_t k : subtree_steps) {
    const int anchor = bound(b, tpl.plan[k].slot(), tpl);
    for (const auto& t : s.tokens) {
      const auto i = static_cast<std::size_t>(t.index);
      if (single[i] || root_punct(s, t) || !s.dominates(anchor, t.index)) continue;
      owner[i] = static_cast<int>(k);
    }
  }

  auto finish = [&](Token t) {
    decapitalize_initial(t);
    if (reinflection && reinflect.contains(t.index)) {
      const std::string base = t.lemma.empty() ? t.form : t.lemma;
      t.form = morphology::inflect(base, *reinflection);
    }
    return t;
  };

  std::vector<Token> out;
  for (std::size_t k = 0; k < tpl.plan.size(); ++k) {
    for (const auto& t : s.tokens) {
      if (owner[static_cast<std::size_t>(t.index)] == static_cast<int>(k)) out.push_back(finish(t));
    }
  }
  if (moved_copula) {
    Token cop = s.at(moved_copula->first);
    decapitalize_initial(cop);
    cop.form = strings::match_case(cop.form, agree_copula(cop, subject_agreement(s, s.at(moved_copula->second))));
    out.push_back(std::move(cop));
  }
  return out;
}

namespace realize_detail {

inline bool is_aux_like(const Token& t) {
  return t.deprel == "aux" || t.deprel == "aux:pass" || t.deprel == "auxpass" || t.deprel == "cop";
}

inline bool is_subject(const Token& t) {
  return t.deprel == "nsubj" || t.deprel == "nsubj:pass" || t.deprel == "nsubjpass";
}

// Words of the list that belong to a subject phrase, judged by head links inside the list.
inline std::vector<bool> subject_members(const std::vector<Token>& tokens) {
  std::map<int, std::size_t> by_index;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].index > 0) by_index[tokens[i].index] = i;
  }
  std::vector<bool> member(tokens.size(), false);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::size_t cur = i;
    for (std::size_t steps = 0; steps <= tokens.size(); ++steps) {
      if (tokens[cur].index == 0) break;
      if (is_subject(tokens[cur])) {
        member[i] = true;
        break;
      }
      const auto it = by_index.find(tokens[cur].head);
      if (it == by_index.end()) break;
      cur = it->second;
    }
  }
  return member;
}

}  // namespace realize_detail

// Puts any subject that still follows its auxiliary group in front of it, then
// expands contracted auxiliaries and negation.
inline std::vector<Token> handle_modals_aux(std::vector<Token> tokens, const Bindings& /*bindings*/ = {}) {
  using namespace realize_detail;
  const auto member = subject_members(tokens);
  for (std::size_t i = 0; i < tokens.size();) {
    if (!is_aux_like(tokens[i]) || member[i]) {
      ++i;
      continue;
    }
    std::size_t aux_end = i + 1;
    while (aux_end < tokens.size() && !member[aux_end] && (is_aux_like(tokens[aux_end]) || is_negation(tokens[aux_end]))) {
      ++aux_end;
    }
    std::size_t subj_end = aux_end;
    while (subj_end < tokens.size() && member[subj_end]) ++subj_end;
    if (subj_end > aux_end) {
      std::rotate(tokens.begin() + static_cast<std::ptrdiff_t>(i), tokens.begin() + static_cast<std::ptrdiff_t>(aux_end),
                  tokens.begin() + static_cast<std::ptrdiff_t>(subj_end));
      i = subj_end;
    } else {
      i = aux_end;
    }
  }

  static const std::map<std::string, std::string> kNegatedStems = {
      {"ca", "can"}, {"wo", "will"}, {"sha", "shall"}};
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    Token& t = tokens[i];
    const std::string f = strings::lower(t.form);
    if (f == "n't") {
      t.form = "not";
      if (i > 0) {
        const auto stem = kNegatedStems.find(strings::lower(tokens[i - 1].form));
        if (stem != kNegatedStems.end()) tokens[i - 1].form = strings::match_case(tokens[i - 1].form, stem->second);
      }
      continue;
    }
    if (!strings::starts_with(f, "'") || t.upos != "AUX") continue;
    const std::string lemma = strings::lower(t.lemma);
    if (f == "'ll") t.form = "will";
    else if (f == "'re") t.form = "are";
    else if (f == "'m") t.form = "am";
    else if (f == "'ve") t.form = "have";
    else if (f == "'s") t.form = lemma == "have" ? "has" : "is";
    else if (f == "'d") t.form = lemma == "have" ? "had" : "would";
  }
  return tokens;
}

inline std::string_view ne_replacement(std::string_view label) {
  if (label == "PERSON" || label == "PER") return "person";
  if (label == "ORG") return "organization";
  if (label == "LOC" || label == "GPE") return "place";
  return {};
}

// Each maximal run of words sharing a replaceable NE label is, with probability
// `prob`, replaced as a whole by "that person" / "that organization" / "that place".
// One uniform draw is consumed per replaceable span.
inline std::vector<Token> substitute_named_entity(const std::vector<Token>& tokens, Rng& rng, double prob) {
  std::vector<Token> out;
  for (std::size_t i = 0; i < tokens.size();) {
    const std::string_view label = tokens[i].named_entity();
    const std::string_view noun = ne_replacement(label);
    std::size_t end = i + 1;
    if (!label.empty()) {
      while (end < tokens.size() && tokens[end].named_entity() == label) ++end;
    }
    if (noun.empty() || !rng.bernoulli(prob)) {
      out.insert(out.end(), tokens.begin() + static_cast<std::ptrdiff_t>(i), tokens.begin() + static_cast<std::ptrdiff_t>(end));
      i = end;
      continue;
    }
    // The span head is the word whose head lies outside the span.
    const Token* head = &tokens[i];
    for (std::size_t j = i; j < end; ++j) {
      bool inside = false;
      for (std::size_t k = i; k < end; ++k) inside = inside || (tokens[k].index != 0 && tokens[k].index == tokens[j].head);
      if (!inside) {
        head = &tokens[j];
        break;
      }
    }
    Token det;
    det.form = "that";
    det.lemma = "that";
    det.upos = "DET";
    det.deprel = "det";
    Token n;
    n.form = std::string(noun);
    n.lemma = n.form;
    n.upos = "NOUN";
    n.deprel = head->deprel;
    n.head = head->head;
    out.push_back(std::move(det));
    out.push_back(std::move(n));
    i = end;
  }
  return out;
}

namespace realize_detail {

inline bool attaches_left(std::string_view form) {
  static const std::set<std::string_view> kLeft = {",", ".", "!", "?", ";", ":", ")", "%", "n't", "'s"};
  return kLeft.contains(form) || strings::starts_with(form, "'");
}

}  // namespace realize_detail

// Joins word forms with single spaces, attaching closing punctuation and
// clitics to the left. The first character is lower-cased unless the first
// word is a proper noun or "I". No terminal punctuation is added.
inline std::string detokenize(const std::vector<Token>& tokens) {
  std::string out;
  bool glue_next = false;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    if (i > 0 && !glue_next && !realize_detail::attaches_left(t.form)) out += ' ';
    std::string form = t.form;
    if (i == 0 && t.upos != "PROPN" && form != "I" && !form.empty()) {
      form[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(form[0])));
    }
    out += form;
    glue_next = t.misc.has("SpaceAfter", "No");
  }
  return out;
}

namespace realize_detail {

inline std::string_view strip_terminal(std::string_view body) {
  body = strings::trim(body);
  while (!body.empty() && (body.back() == '.' || body.back() == '?' || body.back() == '!')) {
    body.remove_suffix(1);
    body = strings::trim(body);
  }
  return body;
}

}  // namespace realize_detail

// prefix + " " + body + "." [+ " " + suffix]
inline std::string compose(std::string_view prefix, std::string_view body, std::string_view suffix) {
  const auto clause = realize_detail::strip_terminal(body);
  if (clause.empty()) throw ContractError("compose: empty response body");
  std::string out(strings::trim(prefix));
  if (!out.empty()) out += ' ';
  out += clause;
  out += '.';
  const auto tail = strings::trim(suffix);
  if (!tail.empty()) {
    out += ' ';
    out += tail;
  }
  return out;
}

}  // namespace idk
