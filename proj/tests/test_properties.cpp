// End-to-end invariants over random trees: translation, the loop rewrite and
// discovery agree with each other and with the reference semantics.

#include <gtest/gtest.h>

#include "atmine/discovery.hpp"
#include "atmine/genlab.hpp"
#include "atmine/replay.hpp"
#include "atmine/translate.hpp"
#include "support/oracles.hpp"

using namespace atmine;

TEST(Properties, LoopFreeTranslationKeepsLanguage) {
  oracle::Rng rng(101);
  oracle::TreeShape shape;
  shape.distinct = false;
  shape.tau_rate = 0.05;
  for (int iter = 0; iter < 120; ++iter) {
    const ProcessTree p = oracle::random_pt(rng, shape);
    const TraceSet lp = pt_language(p, Bounds::unlimited());
    EXPECT_FALSE(lp.truncated);
    EXPECT_EQ(at_language(p2t(p), Bounds::unlimited()), lp) << print_pt(p);
    EXPECT_EQ(lp.traces, oracle::pt_lang(p, 0)) << print_pt(p);
  }
}

TEST(Properties, LoopTranslationAndRewriteKeepLanguage) {
  oracle::Rng rng(102);
  oracle::TreeShape shape;
  shape.max_leaves = 5;
  shape.ops = {PtOp::Seq, PtOp::Xor, PtOp::And, PtOp::Or, PtOp::Loop, PtOp::Rep};
  shape.tau_rate = 0.1;
  for (int iter = 0; iter < 80; ++iter) {
    const ProcessTree p = oracle::random_pt(rng, shape);
    const ProcessTree r = redo_to_rep(p);
    for (std::size_t k = 0; k <= 2; ++k) {
      const auto b = Bounds::unlimited(k);
      const TraceSet lp = pt_language(p, b);
      EXPECT_EQ(at_language(p2t(p), b), lp) << print_pt(p) << " k=" << k;
      EXPECT_EQ(pt_language(r, b), lp) << print_pt(p) << " k=" << k;
    }
    EXPECT_TRUE(pt_loop_free(r) || print_pt(r).find("*(") == std::string::npos);
  }
}

TEST(Properties, MinedModelsReplayTheirLogs) {
  oracle::Rng rng(103);
  oracle::TreeShape shape;
  shape.ops = {PtOp::Seq, PtOp::Xor, PtOp::And, PtOp::Or, PtOp::Loop};
  for (int iter = 0; iter < 60; ++iter) {
    const ProcessTree p = oracle::random_pt(rng, shape);
    const LogVariants log = sample_traces(p, 40, split_seed(103, iter), 3);
    const AttackTree t = p2t(discover(log));
    EXPECT_TRUE(fitness(t, log, Bounds{}).perfect()) << print_pt(p);
  }
}
