#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "atmine/errors.hpp"
#include "atmine/traces.hpp"

namespace atmine {

enum class GateKind { And, Or, Xor, Sand };

enum class AtNode { Leaf, Gate, Rep };

/// Attack tree. Gates carry a label action that is appended after their
/// children's traces; a silent label appends nothing.
struct AttackTree {
  AtNode node = AtNode::Leaf;
  GateKind gate = GateKind::And;  ///< meaningful for gates only
  Action label;                   ///< leaf action or gate label; unused for Rep
  std::vector<AttackTree> children;

  static AttackTree leaf(std::string name) {
    return {AtNode::Leaf, GateKind::And, Action::observable(std::move(name)), {}};
  }
  static AttackTree silent_leaf() { return {AtNode::Leaf, GateKind::And, Action::tau(), {}}; }
  static AttackTree make_gate(GateKind kind, Action label, std::vector<AttackTree> kids) {
    return {AtNode::Gate, kind, std::move(label), std::move(kids)};
  }
  static AttackTree repeat(AttackTree body) {
    AttackTree t{AtNode::Rep, GateKind::And, Action::tau(), {}};
    t.children.push_back(std::move(body));
    return t;
  }

  [[nodiscard]] bool is_leaf() const { return node == AtNode::Leaf; }
  [[nodiscard]] bool is_gate() const { return node == AtNode::Gate; }

  friend bool operator==(const AttackTree& a, const AttackTree& b) {
    if (a.node != b.node || a.children != b.children) return false;
    if (a.node == AtNode::Rep) return true;
    if (a.node == AtNode::Gate && a.gate != b.gate) return false;
    return a.label == b.label;
  }
};

std::vector<Violation> validate_at(const AttackTree& tree);

/// Bounded trace language of the tree.
TraceSet at_language(const AttackTree& tree, const Bounds& bounds);

/// Canonical text, e.g. `SAND(tau0; a, XOR(tau1; b, c))`.
std::string at_to_text(const AttackTree& tree);

/// Inverse of at_to_text. Throws ParseError or ValidationError.
AttackTree at_from_text(std::string_view text);

std::string_view to_string(GateKind kind);

/// Observable leaf labels in preorder (duplicates kept).
std::vector<std::string> at_leaf_labels(const AttackTree& tree);

/// Gate kinds in preorder.
std::vector<GateKind> at_gate_kinds(const AttackTree& tree);

std::size_t at_node_count(const AttackTree& tree);

}  // namespace atmine
