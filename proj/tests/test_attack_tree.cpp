#include <gtest/gtest.h>

#include "atmine/attack_tree.hpp"
#include "atmine/genlab.hpp"
#include "support/oracles.hpp"

using namespace atmine;

namespace {

Trace w(std::initializer_list<const char*> xs) {
  Trace t;
  for (const char* x : xs) t.emplace_back(x);
  return t;
}

TraceSet lang(const char* text, std::size_t loops = 3) {
  return at_language(at_from_text(text), Bounds::unlimited(loops));
}

using AT = AttackTree;

}  // namespace

TEST(AtLanguage, Examples) {
  EXPECT_EQ(lang("SAND(tau; a, b)"), TraceSet({w({"a", "b"})}));
  EXPECT_EQ(lang("XOR(x; a, b)"), TraceSet({w({"a", "x"}), w({"b", "x"})}));
  EXPECT_EQ(lang("AND(x; a, b)"), TraceSet({w({"a", "b", "x"}), w({"b", "a", "x"})}));
  EXPECT_EQ(lang("OR(tau; a, b)"), TraceSet({w({"a"}), w({"b"}), w({"a", "b"}), w({"b", "a"})}));
  EXPECT_EQ(lang("rep(a)", 2), TraceSet({{}, w({"a"}), w({"a", "a"})}));
  EXPECT_EQ(lang("a"), TraceSet({w({"a"})}));
}

TEST(AtLanguage, OrWithThreeChildrenMatchesOracle) {
  const AT t = at_from_text("OR(g; a, SAND(tau; b, c), d)");
  EXPECT_EQ(at_language(t, Bounds{}).traces, oracle::at_lang(t, 0));
}

TEST(AtText, ParseAndPrint) {
  const AT t = at_from_text("SAND(tau; a, b)");
  ASSERT_TRUE(t.is_gate());
  EXPECT_EQ(t.gate, GateKind::Sand);
  EXPECT_TRUE(t.label.silent);
  EXPECT_EQ(t.children, (std::vector<AT>{AT::leaf("a"), AT::leaf("b")}));
  EXPECT_EQ(at_to_text(t), "SAND(tau; a, b)");
  EXPECT_EQ(at_to_text(at_from_text("OR(\"Bypass 802.1x\"; rep(a), XOR(tau7; b))")),
            "OR(\"Bypass 802.1x\"; rep(a), XOR(tau7; b))");
}

TEST(AtText, Errors) {
  EXPECT_THROW(at_from_text("AND(A;)"), ValidationError);
  EXPECT_THROW(at_from_text("AND(A; a"), ParseError);
  EXPECT_THROW(at_from_text("AND(A a)"), ParseError);
  EXPECT_THROW(at_from_text("rep(a, b)"), ValidationError);
  try {
    at_from_text("SAND(tau;\n a,, b)");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(AtText, FixtureRoundTrip) {
  const AT f = bypassing_fixture();
  EXPECT_EQ(at_from_text(at_to_text(f)), f);
}

TEST(ValidateAt, Cases) {
  EXPECT_TRUE(validate_at(AT::leaf("a")).empty());
  EXPECT_FALSE(validate_at(AT::make_gate(GateKind::And, Action::tau(), {})).empty());
  EXPECT_TRUE(validate_at(bypassing_fixture()).empty());
  AT rep = AT::repeat(AT::leaf("a"));
  rep.children.push_back(AT::leaf("b"));
  EXPECT_FALSE(validate_at(rep).empty());
}

TEST(AtHelpers, Inventory) {
  const AT t = at_from_text("SAND(x; a, OR(tau; b, rep(a)))");
  EXPECT_EQ(at_leaf_labels(t), (std::vector<std::string>{"a", "b", "a"}));
  EXPECT_EQ(at_gate_kinds(t), (std::vector<GateKind>{GateKind::Sand, GateKind::Or}));
  EXPECT_EQ(at_node_count(t), 6u);
  EXPECT_EQ(to_string(GateKind::Sand), "SAND");
}

TEST(AtProperties, RandomTreesMatchOracle) {
  oracle::Rng rng(11);
  oracle::AtShape shape;
  shape.max_leaves = 6;
  for (int iter = 0; iter < 200; ++iter) {
    const AT t = oracle::random_at(rng, shape, oracle::pick(rng, 1, shape.max_leaves));
    ASSERT_TRUE(validate_at(t).empty()) << at_to_text(t);
    EXPECT_EQ(at_language(t, Bounds::unlimited(1)).traces, oracle::at_lang(t, 1)) << at_to_text(t);
    EXPECT_EQ(at_from_text(at_to_text(t)), t);
  }
}

TEST(AtProperties, SandEndsWithLabelAndUnaryGatesCollapse) {
  oracle::Rng rng(12);
  oracle::AtShape shape;
  shape.max_leaves = 4;
  shape.rep_rate = 0;
  for (int iter = 0; iter < 100; ++iter) {
    const AT a = oracle::random_at(rng, shape, 2), b = oracle::random_at(rng, shape, 2);
    const TraceSet lb = at_language(b, Bounds{});
    for (const auto& t : at_language(AT::make_gate(GateKind::Sand, Action::observable("z"), {a, b}), Bounds{}).traces) {
      ASSERT_FALSE(t.empty());
      EXPECT_EQ(t.back(), "z");
    }
    for (const auto& t : at_language(AT::make_gate(GateKind::Sand, Action::tau(), {a, b}), Bounds{}).traces) {
      // the tail of every trace is a trace of the last child
      bool found = false;
      for (const auto& u : lb.traces)
        found = found || (u.size() <= t.size() && std::equal(u.rbegin(), u.rend(), t.rbegin()));
      EXPECT_TRUE(found);
    }
    const TraceSet la = at_language(a, Bounds{});
    for (GateKind k : {GateKind::And, GateKind::Or, GateKind::Xor, GateKind::Sand})
      EXPECT_EQ(at_language(AT::make_gate(k, Action::tau(), {a}), Bounds{}), la);
  }
}

TEST(AtProperties, XorSizeIsSumOnDisjointChildren) {
  oracle::Rng rng(13);
  oracle::AtShape s1, s2;
  s1.alphabet = {"a", "b"};
  s2.alphabet = {"x", "y"};
  s1.observable_gate_rate = s2.observable_gate_rate = 0;
  s1.rep_rate = s2.rep_rate = 0;
  for (int iter = 0; iter < 100; ++iter) {
    const AT a = oracle::random_at(rng, s1, 3), b = oracle::random_at(rng, s2, 3);
    const TraceSet la = at_language(a, Bounds{}), lb = at_language(b, Bounds{});
    if (la.contains(Trace{}) && lb.contains(Trace{})) continue;  // epsilon is shared
    EXPECT_EQ(at_language(AT::make_gate(GateKind::Xor, Action::tau(), {a, b}), Bounds{}).size(),
              la.size() + lb.size());
  }
}
