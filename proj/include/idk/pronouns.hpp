#pragma once

// First/second person swap so that a question aimed at the agent becomes a
// statement aimed at the user ("How can I ..." -> "... how you can ...").

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "idk/conllu.hpp"
#include "idk/strings.hpp"

namespace idk {

enum class PronounCase { kNominative, kAccusative, kPossessiveDet, kPossessivePron, kReflexive };

struct PronounEntry {
  std::string_view form;
  PronounCase grammatical_case;
  std::string_view flipped;
};

// Restricted to first and second person singular this table is a bijection per case.
inline const std::vector<PronounEntry>& pronoun_map() {
  static const std::vector<PronounEntry> kMap = {
      {"i", PronounCase::kNominative, "you"},
      {"you", PronounCase::kNominative, "I"},
      {"me", PronounCase::kAccusative, "you"},
      {"you", PronounCase::kAccusative, "me"},
      {"my", PronounCase::kPossessiveDet, "your"},
      {"your", PronounCase::kPossessiveDet, "my"},
      {"mine", PronounCase::kPossessivePron, "yours"},
      {"yours", PronounCase::kPossessivePron, "mine"},
      {"myself", PronounCase::kReflexive, "yourself"},
      {"yourself", PronounCase::kReflexive, "myself"},
  };
  return kMap;
}

namespace pronoun_detail {

inline bool is_subject_relation(std::string_view deprel) {
  return deprel == "nsubj" || deprel == "nsubj:pass" || deprel == "nsubjpass" || deprel == "csubj" ||
         deprel == "expl";
}

inline bool is_object_relation(std::string_view deprel) {
  return deprel == "obj" || deprel == "dobj" || deprel == "iobj" || deprel == "obl" ||
         strings::starts_with(deprel, "obl:") || deprel == "nmod" || deprel == "pobj";
}

// Be-forms and their counterparts after the subject moves between I and you.
inline std::optional<std::string> agree_be(std::string_view form, bool now_first_person) {
  const std::string f = strings::lower(form);
  if (now_first_person) {
    if (f == "are" || f == "'re") return "am";
    if (f == "were") return "was";
  } else {
    if (f == "am" || f == "'m") return "are";
    if (f == "was") return "were";
  }
  return std::nullopt;
}

inline bool is_be(const Token& t) {
  const std::string f = strings::lower(t.form);
  return f == "am" || f == "are" || f == "is" || f == "was" || f == "were" || f == "'m" || f == "'re";
}

}  // namespace pronoun_detail

// Case of an ambiguous pronoun: the dependency relation decides, then the
// Case feature, then the following word (a verb suggests a subject).
inline std::optional<PronounCase> pronoun_case(const Token& t, const Token* next) {
  const std::string f = strings::lower(t.form);
  for (const auto& e : pronoun_map()) {
    if (e.form == f && f != "you") return e.grammatical_case;
  }
  if (f != "you") return std::nullopt;
  if (pronoun_detail::is_subject_relation(t.deprel)) return PronounCase::kNominative;
  if (pronoun_detail::is_object_relation(t.deprel)) return PronounCase::kAccusative;
  if (t.feats.has("Case", "Nom")) return PronounCase::kNominative;
  if (t.feats.has("Case", "Acc")) return PronounCase::kAccusative;
  if (next && (next->upos == "VERB" || next->upos == "AUX")) return PronounCase::kNominative;
  return PronounCase::kAccusative;
}

inline std::vector<Token> flip_pronouns(std::vector<Token> tokens) {
  using namespace pronoun_detail;
  std::vector<bool> agreed(tokens.size(), false);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    Token& t = tokens[i];
    const Token* next = i + 1 < tokens.size() ? &tokens[i + 1] : nullptr;
    const auto pcase = pronoun_case(t, next);
    if (!pcase) continue;
    const std::string f = strings::lower(t.form);
    std::string_view flipped;
    for (const auto& e : pronoun_map()) {
      if (e.form == f && e.grammatical_case == *pcase) flipped = e.flipped;
    }
    if (flipped.empty()) continue;
    // Sentence-initial capitals do not survive reordering; only all-caps input is kept.
    const bool shouting = t.form.size() > 1 && t.form == strings::match_case("XX", t.form);
    t.form = shouting ? strings::match_case("XX", flipped) : std::string(flipped);

    if (*pcase != PronounCase::kNominative) continue;
    const bool now_first_person = flipped == "I";
    auto same_clause = [&](const Token& be) {
      return be.index == 0 || t.index == 0 || be.head == t.head || be.index == t.head;
    };
    std::size_t target = tokens.size();
    if (i + 1 < tokens.size() && is_be(tokens[i + 1]) && same_clause(tokens[i + 1])) {
      target = i + 1;
    } else if (i > 0 && is_be(tokens[i - 1]) && same_clause(tokens[i - 1])) {
      target = i - 1;
    }
    if (target < tokens.size() && !agreed[target]) {
      if (auto be = agree_be(tokens[target].form, now_first_person)) {
        tokens[target].form = strings::match_case(tokens[target].form, *be);
        agreed[target] = true;
      }
    }
  }
  return tokens;
}

}  // namespace idk
