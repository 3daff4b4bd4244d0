#include "atmine/discovery.hpp"

#include <algorithm>
#include <numeric>

namespace atmine {

std::string_view to_string(CutKind kind) {
  switch (kind) {
    case CutKind::Xor: return "xor";
    case CutKind::Sequence: return "sequence";
    case CutKind::Parallel: return "parallel";
    case CutKind::Loop: return "loop";
  }
  return "?";
}

Dfg build_dfg(const LogVariants& log) {
  Dfg dfg;
  for (const auto& [trace, count] : log.variants) {
    dfg.nodes.insert(trace.begin(), trace.end());
    dfg.start_activities[trace.front()] += count;
    dfg.end_activities[trace.back()] += count;
    for (std::size_t i = 0; i + 1 < trace.size(); ++i) dfg.edges[{trace[i], trace[i + 1]}] += count;
  }
  return dfg;
}

namespace {

void check_noise(double noise) {
  if (!(noise >= 0.0 && noise <= 1.0))
    throw InputError("noise threshold must lie in [0, 1], got " + std::to_string(noise));
}

std::map<std::string, std::uint64_t> filter_relative(const std::map<std::string, std::uint64_t>& in,
                                                     double noise) {
  std::uint64_t max = 0;
  for (const auto& [a, f] : in) max = std::max(max, f);
  std::map<std::string, std::uint64_t> out;
  for (const auto& [a, f] : in)
    if (!(static_cast<double>(f) < noise * static_cast<double>(max))) out.emplace(a, f);
  return out;
}

// Activities indexed densely in lexicographic order.
struct Graph {
  std::vector<std::string> names;
  std::map<std::string, int> index;
  std::vector<std::vector<bool>> adj;
  std::vector<bool> start, end;

  explicit Graph(const Dfg& dfg) : names(dfg.nodes.begin(), dfg.nodes.end()) {
    const auto n = names.size();
    for (std::size_t i = 0; i < n; ++i) index[names[i]] = static_cast<int>(i);
    adj.assign(n, std::vector<bool>(n, false));
    start.assign(n, false);
    end.assign(n, false);
    for (const auto& [e, f] : dfg.edges) adj[index.at(e.first)][index.at(e.second)] = true;
    for (const auto& [a, f] : dfg.start_activities) start[index.at(a)] = true;
    for (const auto& [a, f] : dfg.end_activities) end[index.at(a)] = true;
  }

  [[nodiscard]] std::size_t size() const { return names.size(); }

  // reach[a][b]: b reachable from a by one or more edges.
  [[nodiscard]] std::vector<std::vector<bool>> reachability() const {
    const auto n = size();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<std::size_t> stack;
      for (std::size_t t = 0; t < n; ++t)
        if (adj[s][t] && !reach[s][t]) {
          reach[s][t] = true;
          stack.push_back(t);
        }
      while (!stack.empty()) {
        const auto u = stack.back();
        stack.pop_back();
        for (std::size_t t = 0; t < n; ++t)
          if (adj[u][t] && !reach[s][t]) {
            reach[s][t] = true;
            stack.push_back(t);
          }
      }
    }
    return reach;
  }

  [[nodiscard]] std::set<std::string> names_of(const std::vector<int>& members) const {
    std::set<std::string> out;
    for (int m : members) out.insert(names[m]);
    return out;
  }
};

// Connected components of an undirected relation over `members`, ordered by
// their smallest member.
template <typename Linked>
std::vector<std::vector<int>> components(const std::vector<int>& members, Linked linked) {
  std::vector<std::vector<int>> out;
  std::vector<bool> placed(members.size(), false);
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (placed[i]) continue;
    std::vector<int> comp;
    std::vector<std::size_t> stack{i};
    placed[i] = true;
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      comp.push_back(members[u]);
      for (std::size_t v = 0; v < members.size(); ++v)
        if (!placed[v] && linked(members[u], members[v])) {
          placed[v] = true;
          stack.push_back(v);
        }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

std::vector<int> all_members(const Graph& g) {
  std::vector<int> m(g.size());
  std::iota(m.begin(), m.end(), 0);
  return m;
}

std::optional<Cut> xor_cut(const Graph& g) {
  auto comps = components(all_members(g), [&](int a, int b) { return g.adj[a][b] || g.adj[b][a]; });
  if (comps.size() < 2) return std::nullopt;
  Cut cut{CutKind::Xor, {}};
  for (const auto& c : comps) cut.partition.push_back(g.names_of(c));
  return cut;
}

std::optional<Cut> sequence_cut(const Graph& g) {
  const auto reach = g.reachability();
  // Start from strongly connected components, then merge groups that are
  // pairwise unreachable or mutually reachable until every pair of groups is
  // ordered one way only.
  auto groups = components(all_members(g), [&](int a, int b) { return reach[a][b] && reach[b][a]; });
  auto group_reach = [&](const std::vector<int>& x, const std::vector<int>& y) {
    for (int a : x)
      for (int b : y)
        if (reach[a][b]) return true;
    return false;
  };
  bool merged = true;
  while (merged && groups.size() > 1) {
    merged = false;
    for (std::size_t i = 0; i < groups.size() && !merged; ++i) {
      for (std::size_t j = i + 1; j < groups.size() && !merged; ++j) {
        if (group_reach(groups[i], groups[j]) == group_reach(groups[j], groups[i])) {
          groups[i].insert(groups[i].end(), groups[j].begin(), groups[j].end());
          std::sort(groups[i].begin(), groups[i].end());
          groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(j));
          merged = true;
        }
      }
    }
  }
  if (groups.size() < 2) return std::nullopt;
  const auto n = groups.size();
  std::vector<std::size_t> successors(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && group_reach(groups[i], groups[j])) ++successors[i];
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return successors[a] > successors[b]; });
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!group_reach(groups[order[i]], groups[order[j]])) return std::nullopt;  // cyclic order
  Cut cut{CutKind::Sequence, {}};
  for (auto idx : order) cut.partition.push_back(g.names_of(groups[idx]));
  return cut;
}

std::optional<Cut> parallel_cut(const Graph& g) {
  auto comps = components(all_members(g), [&](int a, int b) { return !(g.adj[a][b] && g.adj[b][a]); });
  if (comps.size() < 2) return std::nullopt;
  auto complete = [&](const std::vector<int>& part) {
    const bool s = std::any_of(part.begin(), part.end(), [&](int a) { return g.start[a]; });
    const bool e = std::any_of(part.begin(), part.end(), [&](int a) { return g.end[a]; });
    return s && e;
  };
  std::vector<std::vector<int>> parts;
  std::vector<int> leftovers;
  for (auto& c : comps) {
    if (complete(c)) parts.push_back(std::move(c));
    else leftovers.insert(leftovers.end(), c.begin(), c.end());
  }
  if (parts.empty()) return std::nullopt;
  parts.front().insert(parts.front().end(), leftovers.begin(), leftovers.end());
  if (parts.size() < 2) return std::nullopt;
  Cut cut{CutKind::Parallel, {}};
  for (const auto& p : parts) cut.partition.push_back(g.names_of(p));
  return cut;
}

std::optional<Cut> loop_cut(const Graph& g) {
  const auto n = g.size();
  std::vector<bool> in_do(n, false);
  bool any = false;
  for (std::size_t a = 0; a < n; ++a) {
    in_do[a] = g.start[a] || g.end[a];
    any = any || in_do[a];
  }
  if (!any) return std::nullopt;
  std::vector<int> rest;
  for (std::size_t a = 0; a < n; ++a)
    if (!in_do[a]) rest.push_back(static_cast<int>(a));
  auto comps = components(rest, [&](int a, int b) { return g.adj[a][b] || g.adj[b][a]; });

  const std::vector<bool> do_initial = in_do;
  std::vector<std::vector<int>> redo;
  for (auto& comp : comps) {
    bool ok = true;
    for (int y : comp) {
      bool entered_from_end = false;
      bool exits_to_start = false;
      for (std::size_t x = 0; x < n; ++x) {
        if (!do_initial[x]) continue;
        if (g.adj[x][y]) {
          if (!g.end[x]) ok = false;
          entered_from_end = true;
        }
        if (g.adj[y][x]) {
          if (!g.start[x]) ok = false;
          exits_to_start = true;
        }
      }
      // An entry point must be reachable from every end activity; an exit
      // point must lead to every start activity.
      for (std::size_t x = 0; x < n && ok; ++x) {
        if (entered_from_end && g.end[x] && !g.adj[x][y]) ok = false;
        if (exits_to_start && g.start[x] && !g.adj[y][x]) ok = false;
      }
    }
    if (ok) {
      redo.push_back(std::move(comp));
    } else {
      for (int y : comp) in_do[y] = true;
    }
  }
  if (redo.empty()) return std::nullopt;
  std::vector<int> do_part;
  for (std::size_t a = 0; a < n; ++a)
    if (in_do[a]) do_part.push_back(static_cast<int>(a));
  Cut cut{CutKind::Loop, {g.names_of(do_part)}};
  for (const auto& r : redo) cut.partition.push_back(g.names_of(r));
  return cut;
}

std::size_t part_of(const Cut& cut, const std::string& a) {
  for (std::size_t i = 0; i < cut.partition.size(); ++i)
    if (cut.partition[i].count(a)) return i;
  return cut.partition.size();
}

Trace project(const Trace& t, const std::set<std::string>& part) {
  Trace out;
  for (const auto& a : t)
    if (part.count(a)) out.push_back(a);
  return out;
}

class Miner {
 public:
  explicit Miner(double noise) : noise_(noise) {}

  ProcessTree mine(const LogVariants& log) const {
    if (log.variants.empty()) return ProcessTree::tau();
    if (log.empty_trace_count > 0) {
      LogVariants rest = log;
      rest.empty_trace_count = 0;
      return ProcessTree::node(PtOp::Xor, {ProcessTree::tau(), mine(rest)});
    }
    const auto alphabet = log.alphabet();
    if (alphabet.size() == 1) {
      const std::string& a = *alphabet.begin();
      const bool once = std::all_of(log.variants.begin(), log.variants.end(),
                                    [](const auto& v) { return v.first.size() == 1; });
      if (once) return ProcessTree::leaf(a);
      return ProcessTree::node(PtOp::Loop, {ProcessTree::leaf(a), ProcessTree::tau()});
    }
    const Dfg dfg = filter_dfg(build_dfg(log), noise_);
    if (auto cut = find_cut(dfg)) {
      std::vector<ProcessTree> kids;
      for (const auto& sub : split_log(log, *cut)) kids.push_back(mine(sub));
      return ProcessTree::node(op_for(cut->kind), std::move(kids));
    }
    std::vector<ProcessTree> flower{ProcessTree::tau()};
    for (const auto& a : alphabet) flower.push_back(ProcessTree::leaf(a));
    return ProcessTree::node(PtOp::Loop, std::move(flower));
  }

 private:
  static PtOp op_for(CutKind kind) {
    switch (kind) {
      case CutKind::Xor: return PtOp::Xor;
      case CutKind::Sequence: return PtOp::Seq;
      case CutKind::Parallel: return PtOp::And;
      case CutKind::Loop: return PtOp::Loop;
    }
    return PtOp::Xor;
  }

  double noise_;
};

}  // namespace

Dfg filter_dfg(const Dfg& dfg, double noise) {
  check_noise(noise);
  Dfg out;
  out.nodes = dfg.nodes;
  std::map<std::string, std::uint64_t> max_out;
  for (const auto& [e, f] : dfg.edges) max_out[e.first] = std::max(max_out[e.first], f);
  for (const auto& [e, f] : dfg.edges)
    if (!(static_cast<double>(f) < noise * static_cast<double>(max_out[e.first])))
      out.edges.emplace(e, f);
  out.start_activities = filter_relative(dfg.start_activities, noise);
  out.end_activities = filter_relative(dfg.end_activities, noise);
  return out;
}

std::optional<Cut> find_cut(const Dfg& dfg) {
  if (dfg.nodes.size() < 2) return std::nullopt;
  const Graph g(dfg);
  if (auto c = xor_cut(g)) return c;
  if (auto c = sequence_cut(g)) return c;
  if (auto c = parallel_cut(g)) return c;
  return loop_cut(g);
}

std::vector<LogVariants> split_log(const LogVariants& log, const Cut& cut) {
  const auto parts = cut.partition.size();
  std::vector<LogVariants> out(parts);
  switch (cut.kind) {
    case CutKind::Xor:
      for (const auto& [t, count] : log.variants) {
        std::vector<std::size_t> overlap(parts, 0);
        for (const auto& a : t) {
          const auto p = part_of(cut, a);
          if (p < parts) ++overlap[p];
        }
        const auto best = static_cast<std::size_t>(
            std::max_element(overlap.begin(), overlap.end()) - overlap.begin());
        out[best].add(project(t, cut.partition[best]), count);
      }
      if (log.empty_trace_count > 0) out.front().add(Trace{}, log.empty_trace_count);
      break;
    case CutKind::Sequence:
    case CutKind::Parallel:
      for (const auto& [t, count] : log.variants)
        for (std::size_t p = 0; p < parts; ++p) out[p].add(project(t, cut.partition[p]), count);
      for (std::size_t p = 0; p < parts && log.empty_trace_count > 0; ++p)
        out[p].add(Trace{}, log.empty_trace_count);
      break;
    case CutKind::Loop:
      for (const auto& [t, count] : log.variants) {
        // Maximal runs of events from the same part; consecutive do-runs
        // cannot occur, so each do-run is one execution of the body.
        std::size_t i = 0;
        while (i < t.size()) {
          const auto p = std::min(part_of(cut, t[i]), parts - 1);
          Trace run;
          while (i < t.size() && std::min(part_of(cut, t[i]), parts - 1) == p) run.push_back(t[i++]);
          out[p].add(run, count);
        }
      }
      if (log.empty_trace_count > 0) out.front().add(Trace{}, log.empty_trace_count);
      break;
  }
  return out;
}

ProcessTree discover(const LogVariants& log, double noise) {
  check_noise(noise);
  if (log.empty()) throw InputError("cannot discover a process tree from an empty log");
  return Miner(noise).mine(log);
}

}  // namespace atmine
