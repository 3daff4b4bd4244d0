#include "atmine/translate.hpp"

namespace atmine {

namespace {

GateKind gate_for(PtOp op) {
  switch (op) {
    case PtOp::Seq: return GateKind::Sand;
    case PtOp::And: return GateKind::And;
    case PtOp::Or: return GateKind::Or;
    default: return GateKind::Xor;
  }
}

AttackTree translate(const ProcessTree& t, TauSupply& taus) {
  switch (t.op) {
    case PtOp::Leaf:
      return t.action.silent ? AttackTree::silent_leaf() : AttackTree::leaf(t.action.name);
    case PtOp::Rep: return AttackTree::repeat(translate(t.children.front(), taus));
    case PtOp::Loop: {
      // Labels are drawn in preorder of the emitted tree: outer SAND, the do
      // part, the repeated SAND, the redo XOR, then the do part again.
      const Action outer = taus.next();
      AttackTree first = translate(t.children.front(), taus);
      const Action inner = taus.next();
      const Action choice = taus.next();
      std::vector<AttackTree> redo;
      for (auto it = t.children.begin() + 1; it != t.children.end(); ++it)
        redo.push_back(translate(*it, taus));
      AttackTree again = translate(t.children.front(), taus);
      std::vector<AttackTree> iteration;
      iteration.push_back(AttackTree::make_gate(GateKind::Xor, choice, std::move(redo)));
      iteration.push_back(std::move(again));
      std::vector<AttackTree> kids;
      kids.push_back(std::move(first));
      kids.push_back(AttackTree::repeat(AttackTree::make_gate(GateKind::Sand, inner, std::move(iteration))));
      return AttackTree::make_gate(GateKind::Sand, outer, std::move(kids));
    }
    default: {
      const Action label = taus.next();
      std::vector<AttackTree> kids;
      kids.reserve(t.children.size());
      for (const auto& c : t.children) kids.push_back(translate(c, taus));
      return AttackTree::make_gate(gate_for(t.op), label, std::move(kids));
    }
  }
}

}  // namespace

AttackTree p2t(const ProcessTree& tree) {
  if (auto violations = validate_pt(tree); !violations.empty())
    throw ValidationError(std::move(violations));
  TauSupply taus;
  return translate(tree, taus);
}

ProcessTree redo_to_rep(const ProcessTree& tree) {
  if (tree.is_leaf()) return tree;
  std::vector<ProcessTree> kids;
  kids.reserve(tree.children.size());
  for (const auto& c : tree.children) kids.push_back(redo_to_rep(c));
  if (tree.op != PtOp::Loop) return ProcessTree::node(tree.op, std::move(kids));

  ProcessTree body = kids.front();
  std::vector<ProcessTree> redo(std::make_move_iterator(kids.begin() + 1),
                                std::make_move_iterator(kids.end()));
  ProcessTree iteration = ProcessTree::node(
      PtOp::Seq, {ProcessTree::node(PtOp::Xor, std::move(redo)), body});
  return ProcessTree::node(
      PtOp::Seq, {std::move(body), ProcessTree::node(PtOp::Rep, {std::move(iteration)})});
}

}  // namespace atmine
