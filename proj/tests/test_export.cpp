#include <gtest/gtest.h>

#include "atmine/export.hpp"
#include "atmine/genlab.hpp"
#include "atmine/translate.hpp"
#include "support/oracles.hpp"

using namespace atmine;

TEST(Risqflan, SandExample) {
  const std::string doc = to_risqflan(at_from_text("SAND(tau0; a, b)"), "demo");
  EXPECT_EQ(doc,
            "// atmine-risqflan 1\n"
            "// model demo\n"
            "begin attack nodes\n"
            "  tau0 // silent \"tau0\"\n"
            "  a\n"
            "  b\n"
            "end attack nodes\n"
            "begin attack diagram\n"
            "  tau0 -OAND-> [a, b]\n"
            "end attack diagram\n"
            "begin attack goal\n"
            "  tau0\n"
            "end attack goal\n");
}

TEST(Risqflan, XorIsOneOutOfN) {
  const std::string doc = to_risqflan(at_from_text("XOR(tau0; a, b, c)"));
  EXPECT_NE(doc.find("tau0 -[1,3]-> [a, b, c]"), std::string::npos);
}

TEST(Risqflan, SingleLeaf) {
  const std::string doc = to_risqflan(AttackTree::leaf("a"));
  EXPECT_NE(doc.find("begin attack diagram\nend attack diagram"), std::string::npos);
  EXPECT_NE(doc.find("begin attack goal\n  a\nend attack goal"), std::string::npos);
  EXPECT_EQ(from_risqflan(doc), AttackTree::leaf("a"));
}

TEST(Risqflan, CheckerRoundTrips) {
  const AttackTree f = bypassing_fixture();
  EXPECT_EQ(from_risqflan(to_risqflan(f, "bypass")), f);
  const AttackTree odd = at_from_text("AND(\"goal x\"; \"a b\", \"a b\", rep(OR(tau; tau, c)))");
  EXPECT_EQ(from_risqflan(to_risqflan(odd)), odd);
}

TEST(Risqflan, CheckerRejectsBrokenDocuments) {
  EXPECT_THROW(from_risqflan("begin attack nodes\n a\nend attack nodes\n"), InputError);
  EXPECT_THROW(from_risqflan("begin attack nodes\n a\nend attack nodes\nbegin attack diagram\n a -AND-> [b]\n"
                             "end attack diagram\nbegin attack goal\n a\nend attack goal\n"),
               InputError);
  EXPECT_THROW(from_risqflan("stray\n"), ParseError);
  EXPECT_THROW(from_risqflan("begin attack nodes\n a\n b\nend attack nodes\nbegin attack diagram\n a -XAND-> [b]\n"
                             "end attack diagram\nbegin attack goal\n a\nend attack goal\n"),
               ParseError);
}

TEST(Dot, Shapes) {
  const std::string leaf = to_dot(AttackTree::leaf("a"));
  EXPECT_NE(leaf.find("n0 [label=\"a\""), std::string::npos);
  EXPECT_EQ(leaf.find("n1"), std::string::npos);
  EXPECT_EQ(leaf.find("->"), std::string::npos);

  const std::string sand = to_dot(at_from_text("SAND(tau0; a, b)"));
  const std::string and_ = to_dot(at_from_text("AND(tau0; a, b)"));
  EXPECT_NE(sand.find("ordering=out"), std::string::npos);
  EXPECT_NE(sand.find("n0 -> n1 [label=\"1\", style=bold]"), std::string::npos);
  EXPECT_NE(sand.find("n0 -> n2 [label=\"2\", style=bold]"), std::string::npos);
  EXPECT_NE(sand, and_);
  EXPECT_EQ(to_dot(at_from_text("SAND(tau0; a, b)")), sand);

  const std::string pt = to_dot(parse_pt("->(a, X(b, tau))"));
  EXPECT_NE(pt.find("digraph process_tree"), std::string::npos);
  for (const char* edge : {"n0 -> n1;", "n0 -> n2;", "n2 -> n3;", "n2 -> n4;"})
    EXPECT_NE(pt.find(edge), std::string::npos) << edge;
}

TEST(ExportProperties, RisqflanIsomorphic) {
  oracle::Rng rng(71);
  oracle::AtShape shape;
  shape.alphabet = {"a", "b", "c", "d e", "tau9x", "rep"};
  for (int iter = 0; iter < 300; ++iter) {
    const AttackTree t = oracle::random_at(rng, shape, oracle::pick(rng, 1, 8));
    EXPECT_EQ(from_risqflan(to_risqflan(t)), t) << at_to_text(t);
  }
}
