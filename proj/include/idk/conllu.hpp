#pragma once

// CoNLL-U reading and writing plus the small amount of tree navigation the
// matcher and the realizer need.
//
// Multiword-token range lines (`3-4`) and empty nodes (`5.1`) are not tree
// nodes. They are kept verbatim on the following syntactic word (or on the
// sentence, when nothing follows) so that writing reproduces them.

#include <algorithm>
#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "idk/error.hpp"
#include "idk/strings.hpp"

namespace idk {

// Ordered `Key=Value|Key=Value` list as found in the FEATS and MISC columns.
class AttributeList {
 public:
  using Entry = std::pair<std::string, std::string>;

  AttributeList() = default;
  AttributeList(std::initializer_list<Entry> entries) : entries_(entries) {}

  static AttributeList parse(std::string_view column) {
    AttributeList out;
    if (column.empty() || column == "_") return out;
    for (auto& item : strings::split(column, '|')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) {
        out.entries_.emplace_back(std::move(item), std::string());
      } else {
        out.entries_.emplace_back(item.substr(0, eq), item.substr(eq + 1));
      }
    }
    return out;
  }

  std::string str() const {
    if (entries_.empty()) return "_";
    std::string out;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (i) out += '|';
      out += entries_[i].first;
      if (!entries_[i].second.empty()) {
        out += '=';
        out += entries_[i].second;
      }
    }
    return out;
  }

  std::optional<std::string_view> get(std::string_view key) const {
    for (const auto& [k, v] : entries_) {
      if (k == key) return std::string_view(v);
    }
    return std::nullopt;
  }

  bool has(std::string_view key, std::string_view value) const {
    const auto v = get(key);
    return v && *v == value;
  }

  void set(std::string key, std::string value) {
    for (auto& [k, v] : entries_) {
      if (k == key) {
        v = std::move(value);
        return;
      }
    }
    entries_.emplace_back(std::move(key), std::move(value));
  }

  void erase(std::string_view key) {
    std::erase_if(entries_, [&](const Entry& e) { return e.first == key; });
  }

  bool empty() const { return entries_.empty(); }
  const std::vector<Entry>& entries() const { return entries_; }

  friend bool operator==(const AttributeList&, const AttributeList&) = default;

 private:
  std::vector<Entry> entries_;
};

// One syntactic word. `index` is 0 for words synthesised during realization.
struct Token {
  int index = 0;
  std::string form;
  std::string lemma;
  std::string upos;
  std::string xpos;
  AttributeList feats;
  int head = 0;
  std::string deprel;
  std::string deps;
  AttributeList misc;
  // Multiword-token and empty-node lines that precede this word in the file.
  std::vector<std::string> preceding_lines;

  // Named-entity label carried in MISC under `NE`, empty when absent.
  std::string_view named_entity() const { return misc.get("NE").value_or(std::string_view()); }

  friend bool operator==(const Token&, const Token&) = default;
};

struct Sentence {
  std::string id;
  std::string text;
  std::vector<std::string> comments;  // comment lines other than sent_id / text, verbatim
  std::vector<Token> tokens;
  std::vector<std::string> trailing_lines;  // empty nodes after the last word

  std::size_t size() const { return tokens.size(); }

  const Token& at(int index) const {
    if (index < 1 || static_cast<std::size_t>(index) > tokens.size()) {
      throw LookupError("no token " + std::to_string(index) + " in sentence '" + id + "'");
    }
    return tokens[static_cast<std::size_t>(index - 1)];
  }

  int root() const {
    for (const auto& t : tokens) {
      if (t.head == 0) return t.index;
    }
    throw StructuralError(id, "no root token");
  }

  std::vector<int> children(int index) const {
    std::vector<int> out;
    for (const auto& t : tokens) {
      if (t.head == index) out.push_back(t.index);
    }
    return out;
  }

  // True when `ancestor` dominates `index` (reflexively).
  bool dominates(int ancestor, int index) const {
    for (std::size_t steps = 0; index != 0 && steps <= tokens.size(); ++steps) {
      if (index == ancestor) return true;
      index = at(index).head;
    }
    return false;
  }

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

namespace conllu_detail {

inline std::optional<int> parse_int(std::string_view s) {
  int value = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end || s.empty()) return std::nullopt;
  return value;
}

inline std::string column_value(const std::string& raw) { return raw == "_" ? std::string() : raw; }

inline std::string column_text(const std::string& value) { return value.empty() ? "_" : value; }

inline std::string display_id(const Sentence& s, std::size_t ordinal) {
  return s.id.empty() ? "#" + std::to_string(ordinal) : s.id;
}

}  // namespace conllu_detail

// Checks the tree invariants: indices 1..n, one root, heads resolve, no cycles.
inline void validate(const Sentence& s, const std::string& label = {}) {
  const std::string name = label.empty() ? s.id : label;
  const int n = static_cast<int>(s.tokens.size());
  if (n == 0) throw StructuralError(name, "sentence has no words");
  int roots = 0;
  for (int i = 0; i < n; ++i) {
    const Token& t = s.tokens[static_cast<std::size_t>(i)];
    if (t.index != i + 1) {
      throw StructuralError(name, "word indices are not contiguous at position " + std::to_string(i + 1));
    }
    if (t.form.empty()) throw StructuralError(name, "empty form on word " + std::to_string(t.index));
    if (t.head < 0 || t.head > n) {
      throw StructuralError(name, "head " + std::to_string(t.head) + " of word " + std::to_string(t.index) +
                                      " does not exist");
    }
    if (t.head == t.index) throw StructuralError(name, "word " + std::to_string(t.index) + " is its own head");
    if (t.head == 0) ++roots;
  }
  if (roots != 1) throw StructuralError(name, "expected exactly one root, found " + std::to_string(roots));
  for (const auto& t : s.tokens) {
    int cur = t.head;
    for (int steps = 0; cur != 0; ++steps) {
      if (steps > n) throw StructuralError(name, "head cycle through word " + std::to_string(t.index));
      cur = s.tokens[static_cast<std::size_t>(cur - 1)].head;
    }
  }
}

inline std::vector<Sentence> read_conllu(std::string_view text) {
  using namespace conllu_detail;
  std::vector<Sentence> out;
  Sentence current;
  std::vector<std::string> pending;
  bool open = false;
  std::size_t line_no = 0;

  auto fail = [&](const std::string& what) {
    throw ParseError(line_no, "sentence '" + display_id(current, out.size() + 1) + "': " + what);
  };

  auto finish = [&]() {
    if (!open) return;
    current.trailing_lines = std::move(pending);
    pending.clear();
    validate(current, display_id(current, out.size() + 1));
    out.push_back(std::move(current));
    current = Sentence();
    open = false;
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string line(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();

    if (strings::trim(line).empty()) {
      finish();
      if (nl == text.size()) break;
      continue;
    }
    open = true;
    if (line.front() == '#') {
      const std::string_view body = strings::trim(std::string_view(line).substr(1));
      const auto eq = body.find('=');
      if (eq != std::string_view::npos) {
        const auto key = strings::trim(body.substr(0, eq));
        const auto value = strings::trim(body.substr(eq + 1));
        if (key == "sent_id") {
          current.id = std::string(value);
          continue;
        }
        if (key == "text") {
          current.text = std::string(value);
          continue;
        }
      }
      current.comments.push_back(line);
      continue;
    }

    auto cols = strings::split(line, '\t');
    if (cols.size() != 10) {
      fail("expected 10 tab-separated columns, found " + std::to_string(cols.size()));
    }
    const std::string& id = cols[0];
    if (id.find('-') != std::string::npos || id.find('.') != std::string::npos) {
      const char sep = id.find('-') != std::string::npos ? '-' : '.';
      const auto parts = strings::split(id, sep);
      if (parts.size() != 2 || !parse_int(parts[0]) || !parse_int(parts[1])) {
        fail("malformed ID '" + id + "'");
      }
      pending.push_back(line);
      continue;
    }
    const auto index = parse_int(id);
    if (!index || *index < 1) fail("malformed ID '" + id + "'");
    const auto head = parse_int(cols[6]);
    if (!head || *head < 0) fail("malformed HEAD '" + cols[6] + "'");

    Token t;
    t.index = *index;
    t.form = cols[1];
    t.lemma = column_value(cols[2]);
    t.upos = column_value(cols[3]);
    t.xpos = column_value(cols[4]);
    t.feats = AttributeList::parse(cols[5]);
    t.head = *head;
    t.deprel = column_value(cols[7]);
    t.deps = column_value(cols[8]);
    t.misc = AttributeList::parse(cols[9]);
    t.preceding_lines = std::move(pending);
    pending.clear();
    current.tokens.push_back(std::move(t));
  }
  finish();
  return out;
}

inline std::string token_line(const Token& t) {
  using conllu_detail::column_text;
  std::string out;
  out += std::to_string(t.index);
  out += '\t';
  out += t.form;
  out += '\t';
  out += column_text(t.lemma);
  out += '\t';
  out += column_text(t.upos);
  out += '\t';
  out += column_text(t.xpos);
  out += '\t';
  out += t.feats.str();
  out += '\t';
  out += std::to_string(t.head);
  out += '\t';
  out += column_text(t.deprel);
  out += '\t';
  out += column_text(t.deps);
  out += '\t';
  out += t.misc.str();
  return out;
}

inline std::string write_conllu(const std::vector<Sentence>& sentences) {
  std::string out;
  for (std::size_t k = 0; k < sentences.size(); ++k) {
    const Sentence& s = sentences[k];
    validate(s, conllu_detail::display_id(s, k + 1));
    if (!s.id.empty()) out += "# sent_id = " + s.id + "\n";
    if (!s.text.empty()) out += "# text = " + s.text + "\n";
    for (const auto& c : s.comments) out += c + "\n";
    for (const auto& t : s.tokens) {
      for (const auto& raw : t.preceding_lines) out += raw + "\n";
      out += token_line(t) + "\n";
    }
    for (const auto& raw : s.trailing_lines) out += raw + "\n";
    out += "\n";
  }
  return out;
}

// The word at `index` and all its transitive dependents, in surface order.
inline std::vector<Token> subtree_yield(const Sentence& s, int index) {
  s.at(index);
  std::vector<Token> out;
  for (const auto& t : s.tokens) {
    if (s.dominates(index, t.index)) out.push_back(t);
  }
  return out;
}

}  // namespace idk
