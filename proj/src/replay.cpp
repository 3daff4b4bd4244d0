#include "atmine/replay.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "nlohmann/json.hpp"

namespace atmine {

// The search walks configurations of the tree: one status word per node in
// preorder. A configuration is extended one observable event at a time; a
// node "fires" when it (or a descendant) consumes the event. Completion
// without consuming anything is decided by nullable().
struct Replayer::Impl {
  static constexpr std::uint32_t kIdle = 0;
  static constexpr std::uint32_t kActive = 1;
  static constexpr std::uint32_t kDone = 2;
  static constexpr std::uint32_t kStatusMask = 3;

  using State = std::vector<std::uint32_t>;

  struct Node {
    AtNode kind = AtNode::Leaf;
    GateKind gate = GateKind::And;
    int label = -1;  // symbol id, -1 when silent
    std::vector<int> kids;
    int end = 0;  // one past the last preorder index of the subtree
    std::vector<bool> alphabet;
  };

  std::vector<Node> nodes;
  std::unordered_map<std::string, int> symbols;

  explicit Impl(const AttackTree& tree) {
    collect_symbols(tree);
    flatten(tree);
  }

  void collect_symbols(const AttackTree& t) {
    if (t.node != AtNode::Rep && !t.label.silent)
      symbols.emplace(t.label.name, static_cast<int>(symbols.size()));
    for (const auto& c : t.children) collect_symbols(c);
  }

  int flatten(const AttackTree& t) {
    const int id = static_cast<int>(nodes.size());
    nodes.emplace_back();
    nodes[id].kind = t.node;
    nodes[id].gate = t.gate;
    nodes[id].alphabet.assign(symbols.size(), false);
    if (t.node != AtNode::Rep && !t.label.silent) {
      nodes[id].label = symbols.at(t.label.name);
      nodes[id].alphabet[nodes[id].label] = true;
    }
    for (const auto& c : t.children) {
      const int k = flatten(c);
      nodes[id].kids.push_back(k);
      for (std::size_t s = 0; s < symbols.size(); ++s)
        if (nodes[k].alphabet[s]) nodes[id].alphabet[s] = true;
    }
    nodes[id].end = static_cast<int>(nodes.size());
    return id;
  }

  static std::uint32_t status(const State& s, int n) { return s[n] & kStatusMask; }
  static std::uint32_t iterations(const State& s, int n) { return s[n] >> 2; }
  static void set_status(State& s, int n, std::uint32_t st) { s[n] = (s[n] & ~kStatusMask) | st; }

  bool nullable(int n, const State& s) const {
    if (status(s, n) == kDone) return true;
    const Node& node = nodes[n];
    switch (node.kind) {
      case AtNode::Leaf: return node.label < 0;
      case AtNode::Rep: {
        const int body = node.kids.front();
        const auto st = status(s, body);
        return st == kIdle || st == kDone || nullable(body, s);
      }
      case AtNode::Gate: return node.label < 0 && children_complete(n, s);
    }
    return false;
  }

  int chosen_child(int n, const State& s) const {
    for (int k : nodes[n].kids)
      if (status(s, k) != kIdle) return k;
    return -1;
  }

  bool children_complete(int n, const State& s) const {
    const Node& node = nodes[n];
    auto ok = [&](int k) { return nullable(k, s); };
    switch (node.gate) {
      case GateKind::Sand:
      case GateKind::And: return std::all_of(node.kids.begin(), node.kids.end(), ok);
      case GateKind::Or: return std::any_of(node.kids.begin(), node.kids.end(), ok);
      case GateKind::Xor: {
        const int chosen = chosen_child(n, s);
        if (chosen >= 0) return nullable(chosen, s);
        return std::any_of(node.kids.begin(), node.kids.end(), ok);
      }
    }
    return false;
  }

  void reset_subtree(State& s, int n) const {
    std::fill(s.begin() + n, s.begin() + nodes[n].end, kIdle);
  }

  void fire(int n, int sym, const State& s, std::uint32_t loop_limit, std::vector<State>& out) const {
    if (sym < 0 || status(s, n) == kDone) return;
    const Node& node = nodes[n];
    if (!node.alphabet[sym]) return;
    switch (node.kind) {
      case AtNode::Leaf:
        if (node.label == sym) {
          State next = s;
          set_status(next, n, kDone);
          out.push_back(std::move(next));
        }
        return;
      case AtNode::Rep: {
        const int body = node.kids.front();
        State base = s;
        set_status(base, n, kActive);
        const auto body_status = status(base, body);
        if (body_status == kActive) fire(body, sym, base, loop_limit, out);
        const bool can_restart =
            body_status == kIdle || body_status == kDone || nullable(body, base);
        if (can_restart && iterations(base, n) < loop_limit) {
          reset_subtree(base, body);
          base[n] += 1u << 2;
          fire(body, sym, base, loop_limit, out);
        }
        return;
      }
      case AtNode::Gate: break;
    }
    if (node.label == sym && children_complete(n, s)) {
      State next = s;
      set_status(next, n, kDone);
      out.push_back(std::move(next));
    }
    State base = s;
    set_status(base, n, kActive);
    switch (node.gate) {
      case GateKind::Sand:
        for (int k : node.kids) {
          if (status(base, k) == kDone) continue;
          fire(k, sym, base, loop_limit, out);
          if (!nullable(k, base)) break;
          set_status(base, k, kDone);
        }
        return;
      case GateKind::And:
      case GateKind::Or:
        for (int k : node.kids) fire(k, sym, base, loop_limit, out);
        return;
      case GateKind::Xor: {
        const int chosen = chosen_child(n, base);
        if (chosen >= 0) {
          fire(chosen, sym, base, loop_limit, out);
        } else {
          for (int k : node.kids) fire(k, sym, base, loop_limit, out);
        }
        return;
      }
    }
  }

  struct Key {
    std::size_t pos;
    State state;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::uint64_t h = 1469598103934665603ull ^ k.pos;
      for (auto v : k.state) h = (h ^ v) * 1099511628211ull;
      return static_cast<std::size_t>(h);
    }
  };

  ReplayResult run(const Trace& trace, const Bounds& bounds) const {
    std::vector<int> syms;
    syms.reserve(trace.size());
    for (const auto& a : trace) {
      auto it = symbols.find(a);
      syms.push_back(it == symbols.end() ? -1 : it->second);
    }
    const auto limit = static_cast<std::uint32_t>(std::max(bounds.max_loop, trace.size()));
    ReplayResult result;
    std::unordered_set<Key, KeyHash> seen;
    std::vector<Key> stack;
    stack.push_back({0, State(nodes.size(), kIdle)});
    std::vector<State> successors;
    while (!stack.empty()) {
      Key cur = std::move(stack.back());
      stack.pop_back();
      if (!seen.insert(cur).second) continue;
      result.furthest = std::max(result.furthest, cur.pos);
      if (cur.pos == syms.size()) {
        if (nullable(0, cur.state)) {
          result.accepted = true;
          return result;
        }
        continue;
      }
      successors.clear();
      fire(0, syms[cur.pos], cur.state, limit, successors);
      // Reverse so the first alternative is explored first.
      for (auto it = successors.rbegin(); it != successors.rend(); ++it)
        stack.push_back({cur.pos + 1, std::move(*it)});
    }
    return result;
  }
};

Replayer::Replayer(const AttackTree& tree) : impl_(std::make_unique<Impl>(tree)) {}
Replayer::~Replayer() = default;
Replayer::Replayer(Replayer&&) noexcept = default;
Replayer& Replayer::operator=(Replayer&&) noexcept = default;

ReplayResult Replayer::run(const Trace& trace, const Bounds& bounds) const {
  return impl_->run(trace, bounds);
}

bool replays(const AttackTree& tree, const Trace& trace, const Bounds& bounds) {
  return Replayer(tree).run(trace, bounds).accepted;
}

FitnessReport fitness(const AttackTree& tree, const LogVariants& log, const Bounds& bounds) {
  if (log.empty()) throw InputError("cannot compute fitness of an empty log");
  const Replayer replayer(tree);
  FitnessReport report;
  auto check = [&](const Trace& t, std::uint64_t count) {
    report.total_traces += count;
    const ReplayResult r = replayer.run(t, bounds);
    if (r.accepted) report.replayed += count;
    else report.failures.push_back({t, count, r.furthest});
  };
  if (log.empty_trace_count > 0) check(Trace{}, log.empty_trace_count);
  for (const auto& [t, count] : log.variants) check(t, count);
  return report;
}

std::string fitness_to_text(const FitnessReport& report) {
  std::ostringstream out;
  out << "total_traces " << report.total_traces << "\n";
  out << "replayed " << report.replayed << "\n";
  out << "fitness " << report.fitness() << "\n";
  for (const auto& f : report.failures)
    out << "failure " << f.count << " " << f.blocking_position << " " << to_string(f.trace) << "\n";
  return out.str();
}

std::string fitness_to_json(const FitnessReport& report) {
  nlohmann::json j;
  j["total_traces"] = report.total_traces;
  j["replayed"] = report.replayed;
  j["fitness"] = report.fitness();
  j["failures"] = nlohmann::json::array();
  for (const auto& f : report.failures)
    j["failures"].push_back(
        {{"trace", f.trace}, {"count", f.count}, {"blocking_position", f.blocking_position}});
  return j.dump(2) + "\n";
}

}  // namespace atmine
