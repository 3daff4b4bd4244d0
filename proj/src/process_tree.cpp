#include "atmine/process_tree.hpp"

#include <algorithm>

#include "term_lexer.hpp"

namespace atmine {

using detail::Lexer;
using detail::Tok;

std::string_view to_string(PtOp op) {
  switch (op) {
    case PtOp::Leaf: return "leaf";
    case PtOp::Seq: return "->";
    case PtOp::Xor: return "X";
    case PtOp::And: return "+";
    case PtOp::Or: return "O";
    case PtOp::Loop: return "*";
    case PtOp::Rep: return "rep";
  }
  return "?";
}

namespace {

struct Positioned {
  std::size_t line;
  std::size_t column;
};

class PtParser {
 public:
  explicit PtParser(std::string_view text) : lex_(text) {}

  ProcessTree parse() {
    ProcessTree t = node("");
    if (lex_.peek().kind != Tok::End) lex_.fail("expected end of input");
    if (!violations_.empty()) throw ValidationError(violations_);
    return t;
  }

 private:
  ProcessTree node(const std::string& path) {
    const detail::Token& t = lex_.peek();
    const Positioned at{t.line, t.column};
    PtOp op = PtOp::Leaf;
    switch (t.kind) {
      case Tok::Arrow: op = PtOp::Seq; break;
      case Tok::Plus: op = PtOp::And; break;
      case Tok::Star: op = PtOp::Loop; break;
      case Tok::Ident:
        if (lex_.next_is_lparen()) {
          if (t.text == "X") op = PtOp::Xor;
          else if (t.text == "O") op = PtOp::Or;
          else if (t.text == "rep") op = PtOp::Rep;
          else lex_.fail("unknown operator");
        }
        break;
      case Tok::Quoted: break;
      default: lex_.fail("expected a process tree");
    }
    if (op == PtOp::Leaf) {
      return {PtOp::Leaf, detail::action_from_token(lex_.take()), {}};
    }
    lex_.take();
    lex_.expect(Tok::LParen, "'('");
    ProcessTree tree = ProcessTree::node(op, {});
    if (lex_.peek().kind != Tok::RParen) {
      while (true) {
        tree.children.push_back(node(child_path(path, tree.children.size())));
        if (lex_.peek().kind == Tok::Comma) {
          lex_.take();
          continue;
        }
        break;
      }
    }
    lex_.expect(Tok::RParen, "',' or ')'");
    for (auto& v : validate_pt(ProcessTree::node(op, std::vector<ProcessTree>(
                                                         tree.children.size(), ProcessTree::tau())))) {
      v.path = path;
      v.message += " (at " + std::to_string(at.line) + ":" + std::to_string(at.column) + ")";
      violations_.push_back(std::move(v));
    }
    return tree;
  }

  static std::string child_path(const std::string& parent, std::size_t i) {
    return parent.empty() ? std::to_string(i) : parent + "." + std::to_string(i);
  }

  Lexer lex_;
  std::vector<Violation> violations_;
};

void print_into(const ProcessTree& t, std::string& out) {
  if (t.is_leaf()) {
    out += detail::render_action(t.action);
    return;
  }
  out += to_string(t.op);
  out += "(";
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    if (i) out += ", ";
    print_into(t.children[i], out);
  }
  out += ")";
}

void validate_into(const ProcessTree& t, const std::string& path, std::vector<Violation>& out) {
  const std::size_t n = t.children.size();
  switch (t.op) {
    case PtOp::Leaf:
      if (n != 0) out.push_back({path, "leaf must not have children"});
      if (t.action.name.empty()) out.push_back({path, "leaf action name must be non-empty"});
      break;
    case PtOp::Seq:
    case PtOp::Xor:
    case PtOp::And:
    case PtOp::Or:
      if (n < 1)
        out.push_back({path, std::string("arity violation: '") + std::string(to_string(t.op)) +
                                 "' needs at least 1 child"});
      break;
    case PtOp::Loop:
      if (n < 2)
        out.push_back({path, "arity violation: redo loop '*' needs at least 2 children, has " +
                                 std::to_string(n)});
      break;
    case PtOp::Rep:
      if (n != 1)
        out.push_back({path, "arity violation: 'rep' needs exactly 1 child, has " +
                                 std::to_string(n)});
      break;
  }
  for (std::size_t i = 0; i < n; ++i)
    validate_into(t.children[i], path.empty() ? std::to_string(i) : path + "." + std::to_string(i),
                  out);
}

class PtEnumerator {
 public:
  explicit PtEnumerator(const Bounds& b) : bounds_(b) {}

  TraceSet lang(const ProcessTree& t) const {
    switch (t.op) {
      case PtOp::Leaf:
        return t.action.silent ? TraceSet::epsilon() : TraceSet{Trace{t.action.name}};
      case PtOp::Seq: return compose::concat_all(langs(t.children), bounds_);
      case PtOp::Xor: return compose::union_all(langs(t.children), bounds_);
      case PtOp::And: return compose::interleave_all(langs(t.children), bounds_);
      case PtOp::Or: return compose::inclusive_choice(langs(t.children), pres(t.children), bounds_);
      case PtOp::Loop: {
        const TraceSet body = lang(t.children.front());
        const TraceSet back = concat_sets(redo_lang(t), body, bounds_);
        return concat_sets(body, bounded_star(back, bounds_), bounds_);
      }
      case PtOp::Rep: return bounded_star(lang(t.children.front()), bounds_);
    }
    return {};
  }

  // Prefix closure, built structurally so that length caps never hide a
  // short prefix of a dropped long trace.
  TraceSet pre(const ProcessTree& t) const {
    switch (t.op) {
      case PtOp::Leaf:
        return t.action.silent ? TraceSet::epsilon() : TraceSet{Trace{}, Trace{t.action.name}};
      case PtOp::Seq: return compose::concat_prefixes(langs(t.children), pres(t.children), bounds_);
      case PtOp::Xor: return compose::union_all(pres(t.children), bounds_);
      case PtOp::And:
      case PtOp::Or: return compose::interleave_all(pres(t.children), bounds_);
      case PtOp::Loop: {
        const TraceSet body = lang(t.children.front());
        const TraceSet body_pre = pre(t.children.front());
        const TraceSet redo = redo_lang(t);
        TraceSet redo_pre;
        for (auto it = t.children.begin() + 1; it != t.children.end(); ++it)
          redo_pre.unite(pre(*it), bounds_);
        const std::vector<TraceSet> iter{redo, body};
        const std::vector<TraceSet> iter_pre{redo_pre, body_pre};
        const TraceSet back = concat_sets(redo, body, bounds_);
        const TraceSet back_pre = compose::concat_prefixes(iter, iter_pre, bounds_);
        const std::vector<TraceSet> whole{body, bounded_star(back, bounds_)};
        const std::vector<TraceSet> whole_pre{body_pre,
                                              compose::star_prefixes(back, back_pre, bounds_)};
        return compose::concat_prefixes(whole, whole_pre, bounds_);
      }
      case PtOp::Rep: {
        const auto& c = t.children.front();
        return compose::star_prefixes(lang(c), pre(c), bounds_);
      }
    }
    return {};
  }

 private:
  TraceSet redo_lang(const ProcessTree& t) const {
    TraceSet redo;
    for (auto it = t.children.begin() + 1; it != t.children.end(); ++it)
      redo.unite(lang(*it), bounds_);
    return redo;
  }

  std::vector<TraceSet> langs(const std::vector<ProcessTree>& kids) const {
    std::vector<TraceSet> out;
    out.reserve(kids.size());
    for (const auto& k : kids) out.push_back(lang(k));
    return out;
  }

  std::vector<TraceSet> pres(const std::vector<ProcessTree>& kids) const {
    std::vector<TraceSet> out;
    out.reserve(kids.size());
    for (const auto& k : kids) out.push_back(pre(k));
    return out;
  }

  Bounds bounds_;
};

}  // namespace

ProcessTree parse_pt(std::string_view text) { return PtParser(text).parse(); }

std::string print_pt(const ProcessTree& tree) {
  std::string out;
  print_into(tree, out);
  return out;
}

std::vector<Violation> validate_pt(const ProcessTree& tree) {
  std::vector<Violation> out;
  validate_into(tree, "", out);
  return out;
}

TraceSet pt_language(const ProcessTree& tree, const Bounds& bounds) {
  return PtEnumerator(bounds).lang(tree);
}

std::size_t pt_activity_count(const ProcessTree& tree) {
  if (tree.is_leaf()) return tree.action.silent ? 0 : 1;
  std::size_t n = 0;
  for (const auto& c : tree.children) n += pt_activity_count(c);
  return n;
}

bool pt_loop_free(const ProcessTree& tree) {
  if (tree.op == PtOp::Loop || tree.op == PtOp::Rep) return false;
  return std::all_of(tree.children.begin(), tree.children.end(),
                     [](const ProcessTree& c) { return pt_loop_free(c); });
}

}  // namespace atmine
