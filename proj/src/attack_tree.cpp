#include "atmine/attack_tree.hpp"

#include "term_lexer.hpp"

namespace atmine {

using detail::Lexer;
using detail::Tok;

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::And: return "AND";
    case GateKind::Or: return "OR";
    case GateKind::Xor: return "XOR";
    case GateKind::Sand: return "SAND";
  }
  return "?";
}

namespace {

std::string child_path(const std::string& parent, std::size_t i) {
  return parent.empty() ? std::to_string(i) : parent + "." + std::to_string(i);
}

void validate_into(const AttackTree& t, const std::string& path, std::vector<Violation>& out) {
  switch (t.node) {
    case AtNode::Leaf:
      if (!t.children.empty()) out.push_back({path, "leaf must not have children"});
      if (t.label.name.empty()) out.push_back({path, "leaf action name must be non-empty"});
      break;
    case AtNode::Gate:
      if (t.children.empty())
        out.push_back({path, "arity violation: " + std::string(to_string(t.gate)) +
                                 " gate needs at least 1 child"});
      if (t.label.name.empty()) out.push_back({path, "gate label must be non-empty"});
      break;
    case AtNode::Rep:
      if (t.children.size() != 1)
        out.push_back({path, "arity violation: 'rep' needs exactly 1 child, has " +
                                 std::to_string(t.children.size())});
      break;
  }
  for (std::size_t i = 0; i < t.children.size(); ++i)
    validate_into(t.children[i], child_path(path, i), out);
}

class AtEnumerator {
 public:
  explicit AtEnumerator(const Bounds& b) : bounds_(b) {}

  TraceSet lang(const AttackTree& t) const {
    switch (t.node) {
      case AtNode::Leaf:
        return t.label.silent ? TraceSet::epsilon() : TraceSet{Trace{t.label.name}};
      case AtNode::Rep: return bounded_star(lang(t.children.front()), bounds_);
      case AtNode::Gate: return append_action(body(t), t.label, bounds_);
    }
    return {};
  }

  TraceSet pre(const AttackTree& t) const {
    switch (t.node) {
      case AtNode::Leaf:
        return t.label.silent ? TraceSet::epsilon() : TraceSet{Trace{}, Trace{t.label.name}};
      case AtNode::Rep: {
        const auto& c = t.children.front();
        return compose::star_prefixes(lang(c), pre(c), bounds_);
      }
      case AtNode::Gate: {
        TraceSet out = body_pre(t);
        if (!t.label.silent) out.unite(append_action(body(t), t.label, bounds_), bounds_);
        return out;
      }
    }
    return {};
  }

 private:
  // Language of the gate before its label is appended.
  TraceSet body(const AttackTree& t) const {
    switch (t.gate) {
      case GateKind::And: return compose::interleave_all(langs(t.children), bounds_);
      case GateKind::Or:
        return compose::inclusive_choice(langs(t.children), pres(t.children), bounds_);
      case GateKind::Xor: return compose::union_all(langs(t.children), bounds_);
      case GateKind::Sand: return compose::concat_all(langs(t.children), bounds_);
    }
    return {};
  }

  TraceSet body_pre(const AttackTree& t) const {
    switch (t.gate) {
      case GateKind::And:
      case GateKind::Or: return compose::interleave_all(pres(t.children), bounds_);
      case GateKind::Xor: return compose::union_all(pres(t.children), bounds_);
      case GateKind::Sand:
        return compose::concat_prefixes(langs(t.children), pres(t.children), bounds_);
    }
    return {};
  }

  std::vector<TraceSet> langs(const std::vector<AttackTree>& kids) const {
    std::vector<TraceSet> out;
    out.reserve(kids.size());
    for (const auto& k : kids) out.push_back(lang(k));
    return out;
  }

  std::vector<TraceSet> pres(const std::vector<AttackTree>& kids) const {
    std::vector<TraceSet> out;
    out.reserve(kids.size());
    for (const auto& k : kids) out.push_back(pre(k));
    return out;
  }

  Bounds bounds_;
};

void text_into(const AttackTree& t, std::string& out) {
  switch (t.node) {
    case AtNode::Leaf: out += detail::render_action(t.label); return;
    case AtNode::Rep:
      out += "rep(";
      for (std::size_t i = 0; i < t.children.size(); ++i) {
        if (i) out += ", ";
        text_into(t.children[i], out);
      }
      out += ")";
      return;
    case AtNode::Gate:
      out += to_string(t.gate);
      out += "(";
      out += detail::render_action(t.label);
      out += ";";
      for (std::size_t i = 0; i < t.children.size(); ++i) {
        out += i ? ", " : " ";
        text_into(t.children[i], out);
      }
      out += ")";
      return;
  }
}

class AtParser {
 public:
  explicit AtParser(std::string_view text) : lex_(text) {}

  AttackTree parse() {
    AttackTree t = node("");
    if (lex_.peek().kind != Tok::End) lex_.fail("expected end of input");
    if (!violations_.empty()) throw ValidationError(violations_);
    return t;
  }

 private:
  static bool gate_keyword(const std::string& s, GateKind& kind) {
    if (s == "AND") kind = GateKind::And;
    else if (s == "OR") kind = GateKind::Or;
    else if (s == "XOR") kind = GateKind::Xor;
    else if (s == "SAND") kind = GateKind::Sand;
    else return false;
    return true;
  }

  AttackTree node(const std::string& path) {
    const detail::Token head = lex_.peek();
    if (head.kind != Tok::Ident && head.kind != Tok::Quoted) lex_.fail("expected an attack tree");
    if (head.kind == Tok::Quoted || !lex_.next_is_lparen()) {
      AttackTree leaf;
      leaf.label = detail::action_from_token(lex_.take());
      return leaf;
    }
    GateKind kind{};
    const bool is_rep = head.text == "rep";
    if (!is_rep && !gate_keyword(head.text, kind)) lex_.fail("unknown gate");
    lex_.take();
    lex_.expect(Tok::LParen, "'('");
    AttackTree tree;
    if (is_rep) {
      tree.node = AtNode::Rep;
      tree.label = Action::tau();
    } else {
      tree.node = AtNode::Gate;
      tree.gate = kind;
      const detail::Token lbl = lex_.peek();
      if (lbl.kind != Tok::Ident && lbl.kind != Tok::Quoted) lex_.fail("expected a gate label");
      tree.label = detail::action_from_token(lex_.take());
      lex_.expect(Tok::Semi, "';' after gate label");
    }
    if (lex_.peek().kind != Tok::RParen) {
      while (true) {
        tree.children.push_back(node(child_path(path, tree.children.size())));
        if (lex_.peek().kind != Tok::Comma) break;
        lex_.take();
      }
    }
    lex_.expect(Tok::RParen, "',' or ')'");
    AttackTree shape = tree;
    for (auto& c : shape.children) c = AttackTree::silent_leaf();
    for (auto& v : validate_at(shape)) {
      v.path = path;
      v.message += " (at " + std::to_string(head.line) + ":" + std::to_string(head.column) + ")";
      violations_.push_back(std::move(v));
    }
    return tree;
  }

  Lexer lex_;
  std::vector<Violation> violations_;
};

void leaves_into(const AttackTree& t, std::vector<std::string>& out) {
  if (t.is_leaf()) {
    if (!t.label.silent) out.push_back(t.label.name);
    return;
  }
  for (const auto& c : t.children) leaves_into(c, out);
}

void gates_into(const AttackTree& t, std::vector<GateKind>& out) {
  if (t.is_gate()) out.push_back(t.gate);
  for (const auto& c : t.children) gates_into(c, out);
}

}  // namespace

std::vector<Violation> validate_at(const AttackTree& tree) {
  std::vector<Violation> out;
  validate_into(tree, "", out);
  return out;
}

TraceSet at_language(const AttackTree& tree, const Bounds& bounds) {
  return AtEnumerator(bounds).lang(tree);
}

std::string at_to_text(const AttackTree& tree) {
  std::string out;
  text_into(tree, out);
  return out;
}

AttackTree at_from_text(std::string_view text) { return AtParser(text).parse(); }

std::vector<std::string> at_leaf_labels(const AttackTree& tree) {
  std::vector<std::string> out;
  leaves_into(tree, out);
  return out;
}

std::vector<GateKind> at_gate_kinds(const AttackTree& tree) {
  std::vector<GateKind> out;
  gates_into(tree, out);
  return out;
}

std::size_t at_node_count(const AttackTree& tree) {
  std::size_t n = 1;
  for (const auto& c : tree.children) n += at_node_count(c);
  return n;
}

}  // namespace atmine
