#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "atmine/errors.hpp"
#include "atmine/traces.hpp"

namespace atmine {

enum class PtOp {
  Leaf,  ///< activity or tau
  Seq,   ///< ->
  Xor,   ///< X
  And,   ///< +
  Or,    ///< O
  Loop,  ///< * (redo loop: do-child first, then redo children)
  Rep,   ///< rep (Kleene repetition)
};

/// Block-structured process model. Leaves carry actions; a silent leaf is tau.
struct ProcessTree {
  PtOp op = PtOp::Leaf;
  Action action;
  std::vector<ProcessTree> children;

  static ProcessTree leaf(std::string name) { return {PtOp::Leaf, Action::observable(std::move(name)), {}}; }
  static ProcessTree tau() { return {PtOp::Leaf, Action::tau(), {}}; }
  static ProcessTree node(PtOp op, std::vector<ProcessTree> kids) { return {op, {}, std::move(kids)}; }

  [[nodiscard]] bool is_leaf() const { return op == PtOp::Leaf; }
  [[nodiscard]] bool is_tau() const { return op == PtOp::Leaf && action.silent; }

  friend bool operator==(const ProcessTree&, const ProcessTree&) = default;
};

/// Parses the ASCII term grammar, e.g. `->(a, X(b, tau), *(c, d))`.
/// Throws ParseError on malformed text and ValidationError on arity violations.
ProcessTree parse_pt(std::string_view text);

/// Canonical rendering; parse_pt(print_pt(t)) == t.
std::string print_pt(const ProcessTree& tree);

std::vector<Violation> validate_pt(const ProcessTree& tree);

/// Bounded trace language. tau denotes {epsilon}.
TraceSet pt_language(const ProcessTree& tree, const Bounds& bounds);

/// Number of leaves that carry an observable activity.
std::size_t pt_activity_count(const ProcessTree& tree);

/// True when no Loop or Rep node occurs.
bool pt_loop_free(const ProcessTree& tree);

std::string_view to_string(PtOp op);

}  // namespace atmine
