#include <gtest/gtest.h>

#include <random>
#include <string>

#include "idk/conllu.hpp"
#include "support/fixtures.hpp"

using namespace idk;

namespace {

const std::string kHello = "1\tHello\thello\tINTJ\t_\t_\t0\troot\t_\t_\n";

std::string word_lines(const std::string& text) {
  std::string out;
  for (const auto& line : strings::split(text, '\n')) {
    if (!line.empty() && line.front() != '#') out += line + "\n";
  }
  return out;
}

}  // namespace

TEST(ReadConllu, MinimalRootOnlySentence) {
  const auto s = read_conllu(kHello);
  ASSERT_EQ(s.size(), 1u);
  ASSERT_EQ(s[0].size(), 1u);
  EXPECT_EQ(s[0].tokens[0].form, "Hello");
  EXPECT_EQ(s[0].tokens[0].head, 0);
  EXPECT_EQ(s[0].root(), 1);
  EXPECT_TRUE(s[0].tokens[0].xpos.empty());
}

TEST(ReadConllu, NonIntegerHeadNamesTheLine) {
  const std::string text = "# sent_id = bad\n1\tHi\thi\tINTJ\t_\t_\t0\troot\t_\t_\n2\t!\t!\tPUNCT\t_\t_\tx\tpunct\t_\t_\n";
  try {
    read_conllu(text);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("bad"), std::string::npos);
  }
}

TEST(ReadConllu, ShortLineIsAParseError) {
  EXPECT_THROW(read_conllu("1\tHello\thello\tINTJ\t_\t_\t0\troot\t_\n"), ParseError);
}

TEST(ReadConllu, MalformedIdIsAParseError) {
  EXPECT_THROW(read_conllu("one\tHello\thello\tINTJ\t_\t_\t0\troot\t_\t_\n"), ParseError);
  EXPECT_THROW(read_conllu("1-x\tHello\t_\t_\t_\t_\t_\t_\t_\t_\n" + kHello), ParseError);
}

TEST(ReadConllu, CycleIsAStructuralErrorNamingTheSentence) {
  const std::string text =
      "# sent_id = loop\n"
      "1\ta\ta\tX\t_\t_\t2\tdep\t_\t_\n"
      "2\tb\tb\tX\t_\t_\t1\tdep\t_\t_\n"
      "3\tc\tc\tX\t_\t_\t0\troot\t_\t_\n";
  try {
    read_conllu(text);
    FAIL() << "expected a structural error";
  } catch (const StructuralError& e) {
    EXPECT_EQ(e.sentence_id(), "loop");
  }
}

TEST(ReadConllu, MissingHeadTargetIsAStructuralError) {
  EXPECT_THROW(read_conllu("1\ta\ta\tX\t_\t_\t0\troot\t_\t_\n2\tb\tb\tX\t_\t_\t7\tdep\t_\t_\n"), StructuralError);
}

TEST(ReadConllu, TwoRootsAreRejected) {
  EXPECT_THROW(read_conllu("1\ta\ta\tX\t_\t_\t0\troot\t_\t_\n2\tb\tb\tX\t_\t_\t0\troot\t_\t_\n"), StructuralError);
}

TEST(ReadConllu, GappedIndicesAreRejected) {
  EXPECT_THROW(read_conllu("1\ta\ta\tX\t_\t_\t0\troot\t_\t_\n3\tb\tb\tX\t_\t_\t1\tdep\t_\t_\n"), StructuralError);
}

TEST(ReadConllu, CommentsPopulateIdAndText) {
  const auto& s = test::gold("ref-mit");
  EXPECT_EQ(s.text, "How can I join MIT?");
  EXPECT_EQ(s.size(), 6u);
}

TEST(ReadConllu, MitGoldParseRelations) {
  const auto& s = test::gold("ref-mit");
  EXPECT_EQ(s.at(s.root()).form, "join");
  EXPECT_EQ(s.at(2).form, "can");
  EXPECT_EQ(s.at(2).deprel, "aux");
  EXPECT_EQ(s.at(3).form, "I");
  EXPECT_EQ(s.at(3).deprel, "nsubj");
  EXPECT_EQ(s.at(1).form, "How");
  EXPECT_EQ(s.at(1).deprel, "advmod");
  EXPECT_EQ(s.at(5).named_entity(), "ORG");
}

TEST(ReadConllu, MultiwordAndEmptyNodeLinesAreKeptOutOfTheTree) {
  const auto& cant = test::gold("why-cant");
  EXPECT_EQ(cant.size(), 7u);
  ASSERT_EQ(cant.at(2).preceding_lines.size(), 1u);
  EXPECT_TRUE(strings::starts_with(cant.at(2).preceding_lines[0], "2-3\tcan't"));

  const auto& elided = test::gold("empty-node");
  EXPECT_EQ(elided.size(), 7u);
  EXPECT_EQ(elided.at(6).preceding_lines.size(), 1u);
}

TEST(ReadConllu, UnderscoreColumnsBecomeEmpty) {
  const auto& s = test::gold("ref-instagram");
  EXPECT_TRUE(s.at(6).feats.empty());
  EXPECT_TRUE(s.at(1).deps.empty());
  EXPECT_TRUE(s.at(1).misc.empty());
}

TEST(ReadConllu, UnderscoreFormIsALiteralUnderscore) {
  const auto s = read_conllu("1\t_\t_\tPUNCT\t_\t_\t0\troot\t_\t_\n");
  EXPECT_EQ(s[0].tokens[0].form, "_");
  EXPECT_EQ(write_conllu(s), "1\t_\t_\tPUNCT\t_\t_\t0\troot\t_\t_\n\n");
}

TEST(ReadConllu, CrlfAndMissingFinalNewlineAreAccepted) {
  const auto s = read_conllu("# sent_id = a\r\n1\tHi\thi\tINTJ\t_\t_\t0\troot\t_\t_");
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].id, "a");
}

TEST(WriteConllu, EmptyCorpus) { EXPECT_EQ(write_conllu({}), ""); }

TEST(WriteConllu, SingleTokenSentence) {
  EXPECT_EQ(write_conllu(read_conllu(kHello)), kHello + "\n");
}

TEST(WriteConllu, RejectsInvalidSentences) {
  Sentence s;
  s.id = "x";
  Token t;
  t.index = 1;
  t.form = "a";
  t.head = 1;
  s.tokens.push_back(t);
  EXPECT_THROW(write_conllu({s}), StructuralError);
}

TEST(WriteConllu, MitFixtureWordLinesAreByteIdentical) {
  const std::string original = strings::read_file(test::data_path("gold.conllu"));
  const auto all = read_conllu(original);
  const auto mit = write_conllu({test::gold("ref-mit")});
  const auto start = original.find("# sent_id = ref-mit");
  const auto end = original.find("\n\n", start);
  EXPECT_EQ(word_lines(mit), word_lines(original.substr(start, end - start + 1)));
}

TEST(WriteConllu, WholeFixtureFilesRoundTrip) {
  for (const char* name : {"gold.conllu", "corpus200.conllu", "mini_qqp.conllu"}) {
    const std::string original = strings::read_file(test::data_path(name));
    const auto sentences = read_conllu(original);
    EXPECT_EQ(write_conllu(sentences), original) << name;
    const auto again = read_conllu(write_conllu(sentences));
    ASSERT_EQ(again.size(), sentences.size());
    for (std::size_t i = 0; i < again.size(); ++i) {
      EXPECT_EQ(again[i].id, sentences[i].id);
      EXPECT_EQ(again[i].text, sentences[i].text);
    }
  }
}

TEST(SubtreeYield, RootOfSingleWordSentence) {
  const auto s = read_conllu(kHello);
  EXPECT_EQ(test::words(subtree_yield(s[0], 1)), (std::vector<std::string>{"Hello"}));
}

TEST(SubtreeYield, InstagramSubject) {
  const auto& s = test::gold("ref-instagram");
  EXPECT_EQ(strings::join(test::words(subtree_yield(s, 5)), " "), "the quickest way to increase Instagram followers");
}

TEST(SubtreeYield, LeafNode) {
  EXPECT_EQ(test::words(subtree_yield(test::gold("ref-mit"), 5)), (std::vector<std::string>{"MIT"}));
}

TEST(SubtreeYield, UnknownIndexIsALookupError) {
  EXPECT_THROW(subtree_yield(test::gold("ref-mit"), 42), LookupError);
  EXPECT_THROW(subtree_yield(test::gold("ref-mit"), 0), LookupError);
}

TEST(SubtreeYield, RootYieldCoversEveryWordOnce) {
  for (const auto* corpus : {&test::gold(), &test::corpus200()}) {
    for (const auto& s : *corpus) {
      const auto all = subtree_yield(s, s.root());
      ASSERT_EQ(all.size(), s.size()) << s.id;
      for (std::size_t i = 0; i < all.size(); ++i) EXPECT_EQ(all[i].index, static_cast<int>(i) + 1);
    }
  }
}

TEST(TreeProperty, RandomHeadPermutationsWithCyclesAreRejected) {
  std::mt19937_64 gen(11);
  int rejected = 0;
  int accepted = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + static_cast<int>(gen() % 8);
    Sentence s;
    s.id = "perm";
    for (int i = 1; i <= n; ++i) {
      Token t;
      t.index = i;
      t.form = "w";
      t.head = static_cast<int>(gen() % static_cast<std::uint64_t>(n + 1));
      s.tokens.push_back(t);
    }
    // Independent check: follow heads from every word, a tree reaches 0 within n steps.
    bool tree = true;
    int roots = 0;
    for (const auto& t : s.tokens) {
      roots += t.head == 0;
      int cur = t.index;
      int steps = 0;
      while (cur != 0 && steps <= n) {
        cur = s.tokens[static_cast<std::size_t>(cur - 1)].head;
        ++steps;
      }
      tree = tree && cur == 0;
    }
    tree = tree && roots == 1;
    try {
      validate(s);
      EXPECT_TRUE(tree);
      ++accepted;
    } catch (const StructuralError&) {
      EXPECT_FALSE(tree);
      ++rejected;
    }
  }
  EXPECT_GT(rejected, 0);
  EXPECT_GT(accepted, 0);
}

TEST(AttributeList, ParseAndSerialize) {
  auto feats = AttributeList::parse("Number=Sing|PronType=Int");
  EXPECT_TRUE(feats.has("PronType", "Int"));
  EXPECT_EQ(feats.get("Number"), "Sing");
  feats.set("Number", "Plur");
  EXPECT_EQ(feats.str(), "Number=Plur|PronType=Int");
  feats.erase("Number");
  feats.erase("PronType");
  EXPECT_EQ(feats.str(), "_");
}
