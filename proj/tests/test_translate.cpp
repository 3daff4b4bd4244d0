#include <gtest/gtest.h>

#include "atmine/translate.hpp"
#include "support/oracles.hpp"

using namespace atmine;

namespace {

std::string translated(const char* pt) { return at_to_text(p2t(parse_pt(pt))); }

bool all_gates_silent(const AttackTree& t) {
  if (t.is_gate() && !t.label.silent) return false;
  for (const auto& c : t.children)
    if (!all_gates_silent(c)) return false;
  return true;
}

}  // namespace

TEST(P2t, TableRules) {
  EXPECT_EQ(translated("a"), "a");
  EXPECT_EQ(translated("->(a,b)"), "SAND(tau0; a, b)");
  EXPECT_EQ(translated("X(g,h)"), "XOR(tau0; g, h)");
  EXPECT_EQ(translated("+(a,b)"), "AND(tau0; a, b)");
  EXPECT_EQ(translated("O(a,b)"), "OR(tau0; a, b)");
  EXPECT_EQ(translated("rep(a)"), "rep(a)");
  EXPECT_EQ(translated("X(a, tau)"), "XOR(tau0; a, tau)");
}

TEST(P2t, RedoLoopRule) {
  EXPECT_EQ(translated("*(a,b)"), "SAND(tau0; a, rep(SAND(tau1; XOR(tau2; b), a)))");
  EXPECT_EQ(translated("*(a,b,c)"), "SAND(tau0; a, rep(SAND(tau1; XOR(tau2; b, c), a)))");
  const ProcessTree p = parse_pt("*(a,b)");
  for (std::size_t k = 0; k <= 3; ++k)
    EXPECT_EQ(at_language(p2t(p), Bounds::unlimited(k)), pt_language(p, Bounds::unlimited(k)));
}

TEST(P2t, LabelsArePreorder) {
  EXPECT_EQ(translated("->(X(a, +(b, c)), O(d, e))"),
            "SAND(tau0; XOR(tau1; a, AND(tau2; b, c)), OR(tau3; d, e))");
}

TEST(P2t, RejectsInvalidTrees) {
  ProcessTree bad = ProcessTree::node(PtOp::Loop, {ProcessTree::leaf("a")});
  EXPECT_THROW(p2t(bad), ValidationError);
}

TEST(RedoToRep, Examples) {
  EXPECT_EQ(print_pt(redo_to_rep(parse_pt("*(a,b)"))), "->(a, rep(->(X(b), a)))");
  const ProcessTree plain = parse_pt("->(a, X(b, +(c, d)))");
  EXPECT_EQ(redo_to_rep(plain), plain);
  const ProcessTree nested = parse_pt("*(*(a,b), c)");
  const ProcessTree rewritten = redo_to_rep(nested);
  EXPECT_EQ(print_pt(rewritten),
            "->(->(a, rep(->(X(b), a))), rep(->(X(c), ->(a, rep(->(X(b), a))))))");
  for (std::size_t k = 0; k <= 2; ++k)
    EXPECT_EQ(pt_language(rewritten, Bounds::unlimited(k)), pt_language(nested, Bounds::unlimited(k)));
}

TEST(TauSupply, Fresh) {
  TauSupply s;
  EXPECT_EQ(s.next(), Action::tau("tau0"));
  EXPECT_EQ(s.next(), Action::tau("tau1"));
  EXPECT_EQ(s.issued(), 2u);
}

TEST(TranslateProperties, ShapeIsPreserved) {
  oracle::Rng rng(21);
  oracle::TreeShape shape;
  shape.ops = {PtOp::Seq, PtOp::Xor, PtOp::And, PtOp::Or, PtOp::Rep};
  shape.distinct = false;
  for (int iter = 0; iter < 300; ++iter) {
    const ProcessTree p = oracle::random_pt(rng, shape);
    const AttackTree t = p2t(p);
    EXPECT_TRUE(all_gates_silent(t));
    EXPECT_TRUE(validate_at(t).empty());
    // leaf multiset and operator kinds follow the source one to one
    std::vector<std::string> pt_leaves;
    std::vector<GateKind> expected_kinds;
    auto walk = [&](auto&& self, const ProcessTree& n) -> void {
      if (n.is_leaf() && !n.is_tau()) pt_leaves.push_back(n.action.name);
      switch (n.op) {
        case PtOp::Seq: expected_kinds.push_back(GateKind::Sand); break;
        case PtOp::Xor: expected_kinds.push_back(GateKind::Xor); break;
        case PtOp::And: expected_kinds.push_back(GateKind::And); break;
        case PtOp::Or: expected_kinds.push_back(GateKind::Or); break;
        default: break;
      }
      for (const auto& c : n.children) self(self, c);
    };
    walk(walk, p);
    EXPECT_EQ(at_leaf_labels(t), pt_leaves);
    EXPECT_EQ(at_gate_kinds(t), expected_kinds);
    EXPECT_EQ(p2t(p), t) << "deterministic";
  }
}

TEST(TranslateProperties, NoTauInTranslatedLanguages) {
  oracle::Rng rng(22);
  oracle::TreeShape shape;
  shape.max_leaves = 5;
  shape.tau_rate = 0.2;
  shape.ops = {PtOp::Seq, PtOp::Xor, PtOp::And, PtOp::Or, PtOp::Loop};
  for (int iter = 0; iter < 100; ++iter) {
    const AttackTree t = p2t(oracle::random_pt(rng, shape));
    for (const auto& trace : at_language(t, Bounds::unlimited(1)).traces)
      for (const auto& x : trace) EXPECT_NE(x.rfind("tau", 0), 0u) << x;
  }
}
