#include <gtest/gtest.h>

#include <string>

#include "idk/pattern.hpp"
#include "support/fixtures.hpp"

using namespace idk;

namespace {

TemplateSpec modal_spec() {
  TemplateSpec s;
  s.id = "T-MODAL";
  s.priority = "20";
  s.nodes = {{"root", "upos=VERB"},
             {"wh", "deprel=advmod lemma=how,where head=root before=aux"},
             {"aux", "deprel=aux lemma=can,could head=root before=subj"},
             {"subj", "deprel=nsubj head=root"}};
  s.plan = "EMIT(wh) EMIT_SUBTREE(subj) EMIT(aux) EMIT_SUBTREE(root)";
  return s;
}

std::string compile_error(const TemplateSpec& spec) {
  try {
    compile_template(spec);
  } catch (const CompilationError& e) {
    EXPECT_EQ(e.template_id(), spec.id.empty() ? "<unnamed>" : spec.id);
    return e.what();
  }
  return {};
}

int bound(const Bindings& b, const char* slot) { return b.get(slot).value_or(-1); }

}  // namespace

TEST(CompileTemplate, ModalSpecHasFourConstraints) {
  const Template t = compile_template(modal_spec());
  EXPECT_EQ(t.constraints.size(), 4u);
  EXPECT_EQ(t.plan.size(), 4u);
  EXPECT_EQ(t.constraints[t.search_order.front()].slot, "root");
}

TEST(CompileTemplate, ShippedModalTemplateHasFourConstraints) {
  const Template* t = test::shipped_pool().find("T-MODAL");
  ASSERT_NE(t, nullptr);
  EXPECT_EQ(t->constraints.size(), 4u);
}

TEST(CompileTemplate, ShippedPoolHasNineTemplates) {
  EXPECT_EQ(test::shipped_pool().size(), 9u);
  EXPECT_EQ(test::shipped_pool().find("T-POLAR")->frame, Frame::kWhether);
  EXPECT_EQ(test::shipped_pool().fingerprint().size(), 16u);
}

TEST(CompileTemplate, UndeclaredPlanSlotIsRejected) {
  auto spec = modal_spec();
  spec.plan += " EMIT(xyz)";
  EXPECT_NE(compile_error(spec).find("xyz"), std::string::npos);
}

TEST(CompileTemplate, EmptyConstraintListHasNoRootAnchor) {
  auto spec = modal_spec();
  spec.nodes.clear();
  EXPECT_NE(compile_error(spec).find("root"), std::string::npos);
}

TEST(CompileTemplate, UnknownDirectiveIsRejected) {
  auto spec = modal_spec();
  spec.plan = "EMIT(wh) SHOUT(root)";
  EXPECT_NE(compile_error(spec).find("SHOUT"), std::string::npos);
}

TEST(CompileTemplate, DuplicateSlotIsRejected) {
  auto spec = modal_spec();
  spec.nodes.emplace_back("wh", "deprel=obj head=root");
  EXPECT_NE(compile_error(spec).find("duplicate"), std::string::npos);
}

TEST(CompileTemplate, DanglingAttachmentIsRejected) {
  auto spec = modal_spec();
  spec.nodes.emplace_back("det", "deprel=det head=noun");
  EXPECT_NE(compile_error(spec).find("noun"), std::string::npos);
}

TEST(CompileTemplate, OtherMalformedSpecs) {
  auto a = modal_spec();
  a.id.clear();
  EXPECT_FALSE(compile_error(a).empty());

  auto b = modal_spec();
  b.priority = "high";
  EXPECT_FALSE(compile_error(b).empty());

  auto c = modal_spec();
  c.frame = "sideways";
  EXPECT_FALSE(compile_error(c).empty());

  auto d = modal_spec();
  d.plan = "REINFLECT(root)";
  EXPECT_NE(compile_error(d).find("emits nothing"), std::string::npos);

  auto e = modal_spec();
  e.plan = "EMIT(wh, aux)";
  EXPECT_FALSE(compile_error(e).empty());

  auto f = modal_spec();
  f.nodes.emplace_back("x", "deprel=det head=y");
  f.nodes.emplace_back("y", "deprel=det head=x");
  EXPECT_NE(compile_error(f).find("cycle"), std::string::npos);

  auto g = modal_spec();
  g.nodes[0].second = "colour=blue";
  EXPECT_FALSE(compile_error(g).empty());

  auto h = modal_spec();
  h.nodes[0] = {"root", "upos=VERB head=wh"};
  EXPECT_FALSE(compile_error(h).empty());

  auto i = modal_spec();
  i.plan = "";
  EXPECT_FALSE(compile_error(i).empty());
}

TEST(CompileTemplate, DeprelAliasesAreAppliedAtLoad) {
  auto spec = modal_spec();
  spec.nodes.emplace_back("obj", "deprel=obj head=root");
  const Template t = compile_template(spec);
  EXPECT_TRUE(t.constraint("obj")->deprel.contains("dobj"));
}

TEST(TemplateFile, ParsesBlocksAndRejectsDuplicateIds) {
  const std::string text =
      "# comment\n[A]\nclass = x\npriority = 2\nroot: upos=VERB\nplan = EMIT_SUBTREE(root)\n"
      "[B]\nroot:\nplan = EMIT(root)\n";
  const auto pool = TemplatePool::from_text(text);
  ASSERT_EQ(pool.size(), 2u);
  EXPECT_EQ(pool.templates()[0].priority, 2);
  EXPECT_EQ(pool.templates()[1].priority, 0);
  EXPECT_THROW(TemplatePool::from_text(text + "[A]\nroot:\nplan = EMIT(root)\n"), CompilationError);
  EXPECT_THROW(TemplatePool::from_text("root: upos=VERB\n"), CompilationError);
  EXPECT_THROW(TemplatePool::from_text("[A]\nwhat is this\n"), CompilationError);
}

TEST(MatchTemplate, MitAgainstModal) {
  const auto b = match_template(test::gold("ref-mit"), *test::shipped_pool().find("T-MODAL"));
  ASSERT_TRUE(b);
  EXPECT_EQ(bound(*b, "wh"), 1);
  EXPECT_EQ(bound(*b, "aux"), 2);
  EXPECT_EQ(bound(*b, "subj"), 3);
  EXPECT_EQ(bound(*b, "root"), 4);
  EXPECT_EQ(b->size(), 4u);
}

TEST(MatchTemplate, InstagramAgainstCopula) {
  const auto& s = test::gold("ref-instagram");
  const auto b = match_template(s, *test::shipped_pool().find("T-COP"));
  ASSERT_TRUE(b);
  EXPECT_EQ(s.at(bound(*b, "root")).form, "What");
  EXPECT_EQ(s.at(bound(*b, "cop")).form, "is");
  EXPECT_EQ(s.at(bound(*b, "subj")).form, "way");
}

TEST(MatchTemplate, ImperativeMatchesNothing) {
  const auto& s = test::gold("tell-joke");
  for (const auto& t : test::shipped_pool().templates()) EXPECT_FALSE(match_template(s, t)) << t.id;
}

TEST(MatchTemplate, LowestSurfaceIndexWinsTies) {
  // Two adverbs could fill `adv`; the earlier one is chosen.
  const auto s = read_conllu(
      "1\tsoon\tsoon\tADV\t_\t_\t3\tadvmod\t_\t_\n"
      "2\tnow\tnow\tADV\t_\t_\t3\tadvmod\t_\t_\n"
      "3\tgo\tgo\tVERB\t_\t_\t0\troot\t_\t_\n")[0];
  const auto pool = TemplatePool::from_text("[X]\nroot: upos=VERB\nadv: upos=ADV head=root\nplan = EMIT(adv)\n");
  const auto b = match_template(s, pool.templates()[0]);
  ASSERT_TRUE(b);
  EXPECT_EQ(bound(*b, "adv"), 1);
}

TEST(MatchTemplate, BacktracksPastAnEarlierCandidate) {
  // The first adverb violates `before`, the matcher must try the second.
  const auto s = read_conllu(
      "1\tI\tI\tPRON\t_\t_\t3\tnsubj\t_\t_\n"
      "2\tnow\tnow\tADV\t_\t_\t3\tadvmod\t_\t_\n"
      "3\tgo\tgo\tVERB\t_\t_\t0\troot\t_\t_\n"
      "4\tsoon\tsoon\tADV\t_\t_\t3\tadvmod\t_\t_\n")[0];
  const auto pool = TemplatePool::from_text(
      "[X]\nroot: upos=VERB\nadv: upos=ADV head=root\nsubj: deprel=nsubj head=root before=adv\n"
      "plan = EMIT(adv)\n");
  const auto b = match_template(s, pool.templates()[0]);
  ASSERT_TRUE(b);
  EXPECT_EQ(bound(*b, "adv"), 2);
  const auto strict = TemplatePool::from_text(
      "[X]\nroot: upos=VERB\nadv: upos=ADV head=root before=subj\nsubj: deprel=nsubj head=root\nplan = EMIT(adv)\n");
  EXPECT_FALSE(match_template(s, strict.templates()[0]));
}

TEST(MatchTemplate, BoundIndicesAreDistinct) {
  const auto s = read_conllu("1\tgo\tgo\tVERB\t_\t_\t0\troot\t_\t_\n")[0];
  const auto pool = TemplatePool::from_text("[X]\nroot: upos=VERB\nagain: upos=VERB\nplan = EMIT(root)\n");
  EXPECT_FALSE(match_template(s, pool.templates()[0]));
}

TEST(MatchTemplate, InitialRequiresTheFirstWord) {
  const auto& polar = *test::shipped_pool().find("T-POLAR");
  EXPECT_TRUE(match_template(test::gold("can-change"), polar));
  // "How can I join MIT?" has the modal second, so it is not a yes/no question.
  EXPECT_FALSE(match_template(test::gold("ref-mit"), polar));
}

TEST(MatchTemplate, FeatureConstraints) {
  const auto pool = TemplatePool::from_text(
      "[X]\nroot: upos=VERB\nsubj: feats=Person=1|Case=Nom head=root\nplan = EMIT(root)\n");
  EXPECT_TRUE(match_template(test::gold("ref-mit"), pool.templates()[0]));
  EXPECT_FALSE(match_template(test::gold("where-will"), pool.templates()[0]));
}

TEST(MatchTemplate, Deterministic) {
  for (const auto& s : test::gold()) {
    for (const auto& t : test::shipped_pool().templates()) EXPECT_EQ(match_template(s, t), match_template(s, t));
  }
}

TEST(FirstMatch, MitWinsWithModal) {
  const auto m = first_match(test::gold("ref-mit"), test::shipped_pool().templates());
  ASSERT_TRUE(m);
  EXPECT_EQ(m->tpl->id, "T-MODAL");
  EXPECT_EQ(bound(m->bindings, "root"), 4);
}

TEST(FirstMatch, ImperativeHasNoMatch) {
  EXPECT_FALSE(first_match(test::gold("tell-joke"), test::shipped_pool().templates()));
}

TEST(FirstMatch, LowerPriorityNumberWins) {
  const std::string body = "root: upos=VERB\nplan = EMIT_SUBTREE(root)\n";
  const auto pool = TemplatePool::from_text("[LATE]\npriority = 5\n" + body + "[EARLY]\npriority = 1\n" + body +
                                            "[TIE]\npriority = 1\n" + body);
  const auto m = first_match(test::gold("ref-mit"), pool.templates());
  ASSERT_TRUE(m);
  EXPECT_EQ(m->tpl->id, "EARLY");
}

TEST(FirstMatch, EmptyPoolIsAContractError) {
  EXPECT_THROW(first_match(test::gold("ref-mit"), {}), ContractError);
}

TEST(FirstMatch, ShippedTemplateForEachGoldQuestion) {
  const std::vector<std::pair<std::string, std::string>> expected = {
      {"ref-instagram", "T-COP"},      {"ref-mit", "T-MODAL"},           {"ref-website", "T-MODAL"},
      {"ref-shakespeare", "T-MODAL"},  {"ref-demonetization", "T-COP"},  {"where-will", "T-DO"},
      {"what-eat", "T-WH-OBJ"},       {"eiffel", "T-COP-LOC"},         {"who-wrote", "T-WH-SUBJ"},
      {"why-crash", "T-COP-PROG"},    {"when-results", "T-MODAL-PASS"}, {"can-change", "T-POLAR"},
      {"are-robot", "T-POLAR"},       {"what-name", "T-COP"}};
  for (const auto& [id, tpl] : expected) {
    const auto m = first_match(test::gold(id), test::shipped_pool().templates());
    ASSERT_TRUE(m) << id;
    EXPECT_EQ(m->tpl->id, tpl) << id;
  }
}

TEST(FirstMatch, MonotonePool) {
  // Dropping a template never changes the winner for sentences it did not win.
  const auto& full = test::shipped_pool().templates();
  for (std::size_t drop = 0; drop < full.size(); ++drop) {
    std::vector<Template> reduced;
    for (std::size_t i = 0; i < full.size(); ++i) {
      if (i != drop) reduced.push_back(full[i]);
    }
    for (const auto& s : test::corpus200()) {
      const auto a = first_match(s, full);
      if (a && a->tpl->id == full[drop].id) continue;
      const auto b = first_match(s, reduced);
      ASSERT_EQ(a.has_value(), b.has_value()) << s.id;
      if (a) {
        EXPECT_EQ(a->tpl->id, b->tpl->id);
        EXPECT_EQ(a->bindings, b->bindings);
      }
    }
  }
}
