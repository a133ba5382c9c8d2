#pragma once

// English verb inflection for re-inflecting a main verb after do-support is
// removed: third-person singular present and simple past.

#include <string>
#include <string_view>
#include <unordered_map>

#include "idk/strings.hpp"

namespace idk::morphology {

// base -> simple past
inline const std::unordered_map<std::string, std::string>& irregular_past() {
  static const std::unordered_map<std::string, std::string> kTable = {
      {"arise", "arose"},       {"awake", "awoke"},         {"be", "was"},
      {"bear", "bore"},         {"beat", "beat"},           {"become", "became"},
      {"begin", "began"},       {"bend", "bent"},           {"bet", "bet"},
      {"bid", "bid"},           {"bind", "bound"},          {"bite", "bit"},
      {"bleed", "bled"},        {"blow", "blew"},           {"break", "broke"},
      {"breed", "bred"},        {"bring", "brought"},       {"broadcast", "broadcast"},
      {"build", "built"},       {"burn", "burnt"},          {"burst", "burst"},
      {"buy", "bought"},        {"cast", "cast"},           {"catch", "caught"},
      {"choose", "chose"},      {"cling", "clung"},         {"come", "came"},
      {"cost", "cost"},         {"creep", "crept"},         {"cut", "cut"},
      {"deal", "dealt"},        {"dig", "dug"},             {"do", "did"},
      {"draw", "drew"},         {"dream", "dreamt"},        {"drink", "drank"},
      {"drive", "drove"},       {"eat", "ate"},             {"fall", "fell"},
      {"feed", "fed"},          {"feel", "felt"},           {"fight", "fought"},
      {"find", "found"},        {"flee", "fled"},           {"fling", "flung"},
      {"fly", "flew"},          {"forbid", "forbade"},      {"forecast", "forecast"},
      {"foresee", "foresaw"},   {"forget", "forgot"},       {"forgive", "forgave"},
      {"freeze", "froze"},      {"get", "got"},             {"give", "gave"},
      {"go", "went"},           {"grind", "ground"},        {"grow", "grew"},
      {"hang", "hung"},         {"have", "had"},            {"hear", "heard"},
      {"hide", "hid"},          {"hit", "hit"},             {"hold", "held"},
      {"hurt", "hurt"},         {"keep", "kept"},           {"kneel", "knelt"},
      {"know", "knew"},         {"lay", "laid"},            {"lead", "led"},
      {"lean", "leant"},        {"leap", "leapt"},          {"learn", "learnt"},
      {"leave", "left"},        {"lend", "lent"},           {"let", "let"},
      {"lie", "lay"},           {"light", "lit"},           {"lose", "lost"},
      {"make", "made"},         {"mean", "meant"},          {"meet", "met"},
      {"mislead", "misled"},    {"mistake", "mistook"},     {"misunderstand", "misunderstood"},
      {"overcome", "overcame"}, {"overtake", "overtook"},   {"overthrow", "overthrew"},
      {"pay", "paid"},          {"prove", "proved"},        {"put", "put"},
      {"quit", "quit"},         {"read", "read"},           {"rebuild", "rebuilt"},
      {"redo", "redid"},        {"rethink", "rethought"},   {"rewrite", "rewrote"},
      {"rid", "rid"},           {"ride", "rode"},           {"ring", "rang"},
      {"rise", "rose"},         {"run", "ran"},             {"say", "said"},
      {"see", "saw"},           {"seek", "sought"},         {"sell", "sold"},
      {"send", "sent"},         {"set", "set"},             {"sew", "sewed"},
      {"shake", "shook"},       {"shed", "shed"},           {"shine", "shone"},
      {"shoot", "shot"},        {"show", "showed"},         {"shrink", "shrank"},
      {"shut", "shut"},         {"sing", "sang"},           {"sink", "sank"},
      {"sit", "sat"},           {"sleep", "slept"},         {"slide", "slid"},
      {"sling", "slung"},       {"slit", "slit"},           {"smell", "smelt"},
      {"speak", "spoke"},       {"speed", "sped"},          {"spell", "spelt"},
      {"spend", "spent"},       {"spill", "spilt"},         {"spin", "spun"},
      {"spit", "spat"},         {"split", "split"},         {"spoil", "spoilt"},
      {"spread", "spread"},     {"spring", "sprang"},       {"stand", "stood"},
      {"steal", "stole"},       {"stick", "stuck"},         {"sting", "stung"},
      {"stink", "stank"},       {"strike", "struck"},       {"string", "strung"},
      {"strive", "strove"},     {"swear", "swore"},         {"sweep", "swept"},
      {"swell", "swelled"},     {"swim", "swam"},           {"swing", "swung"},
      {"take", "took"},         {"teach", "taught"},        {"tear", "tore"},
      {"tell", "told"},         {"think", "thought"},       {"throw", "threw"},
      {"thrust", "thrust"},     {"tread", "trod"},          {"undergo", "underwent"},
      {"understand", "understood"}, {"undertake", "undertook"}, {"undo", "undid"},
      {"upset", "upset"},       {"wake", "woke"},           {"wear", "wore"},
      {"weave", "wove"},        {"weep", "wept"},           {"win", "won"},
      {"wind", "wound"},        {"withdraw", "withdrew"},   {"withhold", "withheld"},
      {"withstand", "withstood"}, {"wring", "wrung"},       {"write", "wrote"},
      {"abide", "abode"},       {"alight", "alit"},         {"backslide", "backslid"},
      {"befall", "befell"},     {"beget", "begot"},         {"behold", "beheld"},
      {"beseech", "besought"},  {"bestride", "bestrode"},
      {"browbeat", "browbeat"}, {"can", "could"},           {"cleave", "clove"},
      {"dive", "dove"},         {"forgo", "forwent"},       {"forsake", "forsook"},
      {"forswear", "forswore"}, {"inlay", "inlaid"},        {"input", "input"},
      {"interweave", "interwove"}, {"mislay", "mislaid"},   {"misread", "misread"},
      {"mishear", "misheard"},  {"outdo", "outdid"},        {"outgrow", "outgrew"},
      {"outrun", "outran"},     {"outsell", "outsold"},     {"overdo", "overdid"},
      {"overeat", "overate"},   {"overhang", "overhung"},   {"overhear", "overheard"},
      {"overlay", "overlaid"},  {"overpay", "overpaid"},    {"override", "overrode"},
      {"overrun", "overran"},   {"oversee", "oversaw"},     {"oversleep", "overslept"},
      {"partake", "partook"},   {"preset", "preset"},       {"proofread", "proofread"},
      {"rebind", "rebound"},    {"recast", "recast"},       {"repay", "repaid"},
      {"resell", "resold"},     {"reset", "reset"},         {"retell", "retold"},
      {"shear", "sheared"},     {"shit", "shat"},           {"slay", "slew"},
      {"sneak", "snuck"},       {"stride", "strode"},       {"sunburn", "sunburnt"},
      {"telecast", "telecast"}, {"thrive", "throve"},       {"unbind", "unbound"},
      {"unwind", "unwound"},    {"uphold", "upheld"},       {"waylay", "waylaid"},
      {"will", "would"},        {"shall", "should"},        {"may", "might"},
  };
  return kTable;
}

namespace detail {

inline bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

// Short consonant-vowel-consonant stems double the final consonant: stop -> stopped.
inline bool doubles_final_consonant(std::string_view w) {
  if (w.size() < 3 || w.size() > 4) return false;
  const char a = w[w.size() - 3];
  const char b = w[w.size() - 2];
  const char c = w[w.size() - 1];
  if (is_vowel(a) || !is_vowel(b) || is_vowel(c)) return false;
  if (c == 'w' || c == 'x' || c == 'y') return false;
  // Exactly one vowel group in the stem.
  std::size_t groups = 0;
  bool in_vowel = false;
  for (char ch : w) {
    const bool v = is_vowel(ch);
    if (v && !in_vowel) ++groups;
    in_vowel = v;
  }
  return groups == 1;
}

}  // namespace detail

inline std::string third_singular(std::string_view base) {
  const std::string b = strings::lower(base);
  if (b == "be") return "is";
  if (b == "have") return "has";
  if (b.empty()) return b;
  if (strings::ends_with(b, "s") || strings::ends_with(b, "sh") || strings::ends_with(b, "ch") ||
      strings::ends_with(b, "x") || strings::ends_with(b, "z") ||
      (strings::ends_with(b, "o") && b.size() > 1 && !detail::is_vowel(b[b.size() - 2]))) {
    return b + "es";
  }
  if (b.size() > 1 && b.back() == 'y' && !detail::is_vowel(b[b.size() - 2])) {
    return b.substr(0, b.size() - 1) + "ies";
  }
  return b + "s";
}

inline std::string past(std::string_view base) {
  const std::string b = strings::lower(base);
  if (const auto it = irregular_past().find(b); it != irregular_past().end()) return it->second;
  if (b.empty()) return b;
  if (b.back() == 'e') return b + "d";
  if (b.size() > 1 && b.back() == 'y' && !detail::is_vowel(b[b.size() - 2])) {
    return b.substr(0, b.size() - 1) + "ied";
  }
  if (detail::doubles_final_consonant(b)) return b + b.back() + "ed";
  return b + "ed";
}

enum class Inflection { kBase, kThirdSingular, kPast };

inline std::string inflect(std::string_view base, Inflection how) {
  switch (how) {
    case Inflection::kBase: return strings::lower(base);
    case Inflection::kThirdSingular: return third_singular(base);
    case Inflection::kPast: return past(base);
  }
  return std::string(base);
}

}  // namespace idk::morphology
