#include "atmine/export.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace atmine {

namespace {

// How each node class is written in the attack diagram. Silent goals are
// ordinary intermediate nodes here; only the annotation marks them.
std::string edge_operator(const AttackTree& t) {
  if (t.node == AtNode::Rep) return "-REP->";
  switch (t.gate) {
    case GateKind::And: return "-AND->";
    case GateKind::Or: return "-OR->";
    case GateKind::Sand: return "-OAND->";
    case GateKind::Xor: return "-[1," + std::to_string(t.children.size()) + "]->";
  }
  return "";
}

std::string sanitize(const std::string& label) {
  std::string out;
  for (char c : label)
    out.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '_' ? c : '_');
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out.front()))) out.insert(0, "n_");
  return out;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out.push_back(c);
  }
  return out + "\"";
}

struct Named {
  const AttackTree* node;
  std::string ident;
  std::vector<std::size_t> kids;
};

void name_nodes(const AttackTree& t, std::set<std::string>& used, std::vector<Named>& out) {
  const std::size_t me = out.size();
  std::string base = t.node == AtNode::Rep ? std::string("rep") : sanitize(t.label.name);
  std::string ident = base;
  for (std::size_t k = 1; used.count(ident); ++k) ident = base + "_" + std::to_string(k);
  used.insert(ident);
  out.push_back({&t, ident, {}});
  for (const auto& c : t.children) {
    out[me].kids.push_back(out.size());
    name_nodes(c, used, out);
  }
}

// Line reader that tracks line numbers for error reporting.
class Lines {
 public:
  explicit Lines(std::string_view text) : text_(text) {}

  bool next(std::string& line) {
    if (pos_ >= text_.size()) return false;
    auto nl = text_.find('\n', pos_);
    if (nl == std::string_view::npos) nl = text_.size();
    line = std::string(text_.substr(pos_, nl - pos_));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    pos_ = nl + 1;
    ++number_;
    return true;
  }

  [[nodiscard]] std::size_t number() const { return number_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t number_ = 0;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::string unquote(const std::string& s, std::size_t line) {
  if (s.size() < 2 || s.front() != '"' || s.back() != '"')
    throw ParseError("expected a quoted label", line, 1);
  std::string out;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (s[i] == '\\' && i + 2 < s.size()) {
      ++i;
      out.push_back(s[i] == 'n' ? '\n' : s[i]);
    } else {
      out.push_back(s[i]);
    }
  }
  return out;
}

struct Declared {
  enum Kind { Plain, Observable, Silent, Repetition } kind = Plain;
  std::string label;
};

struct Edge {
  std::string op;
  std::vector<std::string> kids;
  std::size_t line = 0;
};

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

void at_dot(const AttackTree& t, std::size_t& next, std::ostringstream& out) {
  const std::size_t id = next++;
  std::string label, shape;
  switch (t.node) {
    case AtNode::Leaf:
      label = t.label.name;
      shape = t.label.silent ? "plaintext" : "ellipse";
      break;
    case AtNode::Rep:
      label = "rep";
      shape = "doubleoctagon";
      break;
    case AtNode::Gate:
      label = std::string(to_string(t.gate)) + "\\n" + dot_escape(t.label.name);
      switch (t.gate) {
        case GateKind::And: shape = "box"; break;
        case GateKind::Sand: shape = "box\", style=\"rounded,bold"; break;
        case GateKind::Or: shape = "invtrapezium"; break;
        case GateKind::Xor: shape = "diamond"; break;
      }
      break;
  }
  if (t.node != AtNode::Gate) label = dot_escape(label);
  out << "  n" << id << " [label=\"" << label << "\", shape=\"" << shape << "\"];\n";
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    const std::size_t child = next;
    at_dot(t.children[i], next, out);
    out << "  n" << id << " -> n" << child;
    if (t.node == AtNode::Gate && t.gate == GateKind::Sand)
      out << " [label=\"" << (i + 1) << "\", style=bold]";
    out << ";\n";
  }
}

void pt_dot(const ProcessTree& t, std::size_t& next, std::ostringstream& out) {
  const std::size_t id = next++;
  if (t.is_leaf()) {
    out << "  n" << id << " [label=\"" << dot_escape(t.action.silent ? "tau" : t.action.name)
        << "\", shape=\"" << (t.action.silent ? "plaintext" : "box") << "\"];\n";
    return;
  }
  out << "  n" << id << " [label=\"" << dot_escape(std::string(to_string(t.op)))
      << "\", shape=\"circle\"];\n";
  for (const auto& c : t.children) {
    const std::size_t child = next;
    pt_dot(c, next, out);
    out << "  n" << id << " -> n" << child << ";\n";
  }
}

}  // namespace

std::string to_risqflan(const AttackTree& tree, std::string_view goal_name) {
  std::vector<Named> nodes;
  std::set<std::string> used;
  name_nodes(tree, used, nodes);
  std::ostringstream out;
  out << "// atmine-risqflan 1\n";
  out << "// model " << goal_name << "\n";
  out << "begin attack nodes\n";
  for (const auto& n : nodes) {
    out << "  " << n.ident;
    if (n.node->node == AtNode::Rep) out << " // rep";
    else if (n.node->label.silent) out << " // silent " << quote(n.node->label.name);
    else if (n.ident != n.node->label.name) out << " // label " << quote(n.node->label.name);
    out << "\n";
  }
  out << "end attack nodes\n";
  out << "begin attack diagram\n";
  for (const auto& n : nodes) {
    if (n.node->node == AtNode::Leaf) continue;
    out << "  " << n.ident << " " << edge_operator(*n.node) << " [";
    for (std::size_t i = 0; i < n.kids.size(); ++i) out << (i ? ", " : "") << nodes[n.kids[i]].ident;
    out << "]\n";
  }
  out << "end attack diagram\n";
  out << "begin attack goal\n  " << nodes.front().ident << "\nend attack goal\n";
  return out.str();
}

AttackTree from_risqflan(std::string_view text) {
  Lines lines(text);
  std::string line;
  std::map<std::string, Declared> declared;
  std::map<std::string, Edge> edges;
  std::vector<std::string> roots;
  enum class Block { None, Nodes, Diagram, Goal } block = Block::None;
  while (lines.next(line)) {
    const std::size_t ln = lines.number();
    std::string body = trim(line);
    if (body.empty() || body.rfind("//", 0) == 0) continue;
    if (body == "begin attack nodes") block = Block::Nodes;
    else if (body == "begin attack diagram") block = Block::Diagram;
    else if (body == "begin attack goal") block = Block::Goal;
    else if (body.rfind("end attack ", 0) == 0) block = Block::None;
    else if (block == Block::Nodes) {
      Declared d;
      std::string ident = body;
      if (auto c = body.find("//"); c != std::string::npos) {
        ident = trim(body.substr(0, c));
        const std::string note = trim(body.substr(c + 2));
        if (note == "rep") {
          d.kind = Declared::Repetition;
        } else if (note.rfind("silent ", 0) == 0) {
          d.kind = Declared::Silent;
          d.label = unquote(trim(note.substr(7)), ln);
        } else if (note.rfind("label ", 0) == 0) {
          d.kind = Declared::Observable;
          d.label = unquote(trim(note.substr(6)), ln);
        } else {
          throw ParseError("unknown node annotation '" + note + "'", ln, c + 1);
        }
      }
      if (d.kind == Declared::Plain) d.label = ident;
      if (!declared.emplace(ident, d).second)
        throw InputError("node '" + ident + "' declared twice (line " + std::to_string(ln) + ")");
    } else if (block == Block::Diagram) {
      const auto sp = body.find(' ');
      // the child list starts after the arrow; -[1,N]-> has brackets of its own
      const auto arrow = sp == std::string::npos ? sp : body.find("->", sp);
      const auto open = arrow == std::string::npos ? arrow : body.find('[', arrow);
      if (sp == std::string::npos || open == std::string::npos || body.back() != ']')
        throw ParseError("malformed diagram line", ln, 1);
      Edge e;
      e.line = ln;
      e.op = trim(body.substr(sp, open - sp));
      std::stringstream kids(body.substr(open + 1, body.size() - open - 2));
      std::string kid;
      while (std::getline(kids, kid, ','))
        if (!trim(kid).empty()) e.kids.push_back(trim(kid));
      if (!edges.emplace(body.substr(0, sp), e).second)
        throw InputError("node '" + body.substr(0, sp) + "' refined twice");
    } else if (block == Block::Goal) {
      roots.push_back(body);
    } else {
      throw ParseError("content outside of a block", ln, 1);
    }
  }
  if (roots.size() != 1) throw InputError("expected exactly one goal node");

  std::set<std::string> visited;
  auto build = [&](auto&& self, const std::string& ident) -> AttackTree {
    auto d = declared.find(ident);
    if (d == declared.end()) throw InputError("undeclared node '" + ident + "'");
    if (!visited.insert(ident).second)
      throw InputError("node '" + ident + "' reached twice; the diagram is not a tree");
    const Declared& decl = d->second;
    auto e = edges.find(ident);
    AttackTree t;
    if (decl.kind == Declared::Repetition) {
      if (e == edges.end() || e->second.op != "-REP->")
        throw InputError("repetition node '" + ident + "' needs a -REP-> edge");
      t.node = AtNode::Rep;
      t.label = Action::tau();
    } else {
      t.label = decl.kind == Declared::Silent ? Action::tau(decl.label)
                                              : Action::observable(decl.label);
      if (e != edges.end()) {
        t.node = AtNode::Gate;
        const std::string& op = e->second.op;
        if (op == "-AND->") t.gate = GateKind::And;
        else if (op == "-OR->") t.gate = GateKind::Or;
        else if (op == "-OAND->") t.gate = GateKind::Sand;
        else if (op == "-[1," + std::to_string(e->second.kids.size()) + "]->") t.gate = GateKind::Xor;
        else throw ParseError("unsupported gate '" + op + "'", e->second.line, 1);
      }
    }
    if (e != edges.end())
      for (const auto& k : e->second.kids) t.children.push_back(self(self, k));
    return t;
  };
  AttackTree tree = build(build, roots.front());
  if (visited.size() != declared.size()) throw InputError("declared nodes are not all connected to the goal");
  if (auto v = validate_at(tree); !v.empty()) throw ValidationError(v);
  return tree;
}

std::string to_dot(const AttackTree& tree) {
  std::ostringstream out;
  out << "digraph attack_tree {\n  ordering=out;\n  node [fontname=\"Helvetica\"];\n";
  std::size_t next = 0;
  at_dot(tree, next, out);
  out << "}\n";
  return out.str();
}

std::string to_dot(const ProcessTree& tree) {
  std::ostringstream out;
  out << "digraph process_tree {\n  ordering=out;\n  node [fontname=\"Helvetica\"];\n";
  std::size_t next = 0;
  pt_dot(tree, next, out);
  out << "}\n";
  return out.str();
}

}  // namespace atmine
