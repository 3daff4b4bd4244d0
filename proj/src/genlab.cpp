#include "atmine/genlab.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace atmine {

void GenConfig::validate() const {
  if (!(min_activities <= mode_activities && mode_activities <= max_activities))
    throw InputError("activity counts must satisfy min <= mode <= max");
  if (min_activities == 0) throw InputError("a tree needs at least one activity");
  for (double p : {p_seq, p_xor, p_par, p_or})
    if (!(p >= 0.0)) throw InputError("operator probabilities must be non-negative");
  const double sum = p_seq + p_xor + p_par + p_or;
  if (sum > 1.0 + 1e-9) throw InputError("operator probabilities must sum to at most 1");
  if (sum <= 0.0 && !loops_enabled) throw InputError("no operator has positive probability");
}

std::optional<GenConfig> preset(std::string_view name) {
  GenConfig c;
  if (name == "conf1") {
    c.n_models = 300;
    c.mode_activities = 30;
    c.min_activities = 30;
    c.max_activities = 50;
  } else if (name == "conf2") {
    c.n_models = 300;
    c.mode_activities = 50;
    c.min_activities = 50;
    c.max_activities = 100;
  } else if (name == "conf3") {
    c.n_models = 400;
    c.mode_activities = 150;
    c.min_activities = 150;
    c.max_activities = 300;
  } else {
    return std::nullopt;
  }
  return c;
}

std::uint64_t split_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

namespace {

using Rng = std::mt19937_64;

std::string activity_name(std::size_t i) {
  std::string s;
  ++i;
  while (i > 0) {
    --i;
    s.insert(s.begin(), static_cast<char>('a' + i % 26));
    i /= 26;
  }
  return s;
}

std::size_t draw_triangular(Rng& rng, std::size_t lo, std::size_t mode, std::size_t hi) {
  if (lo == hi) return lo;
  const double a = static_cast<double>(lo), c = static_cast<double>(mode), b = static_cast<double>(hi);
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  const double split = (c - a) / (b - a);
  const double x = u < split ? a + std::sqrt(u * (b - a) * (c - a))
                             : b - std::sqrt((1.0 - u) * (b - a) * (b - c));
  return std::clamp(static_cast<std::size_t>(std::llround(x)), lo, hi);
}

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng) { return std::bernoulli_distribution(0.5)(rng); }

class TreeBuilder {
 public:
  TreeBuilder(const GenConfig& c, Rng& rng) : rng_(rng) {
    weights_ = {c.p_seq, c.p_xor, c.p_par, c.p_or, 0.0};
    const double sum = c.p_seq + c.p_xor + c.p_par + c.p_or;
    if (c.loops_enabled) weights_[4] = std::max(0.0, 1.0 - sum);
  }

  ProcessTree build(std::size_t first, std::size_t count) {
    if (count == 1) return ProcessTree::leaf(activity_name(first));
    static constexpr PtOp kOps[] = {PtOp::Seq, PtOp::Xor, PtOp::And, PtOp::Or, PtOp::Loop};
    std::discrete_distribution<std::size_t> pick(weights_.begin(), weights_.end());
    const PtOp op = kOps[pick(rng_)];
    const std::size_t k = uniform(rng_, 2, std::min<std::size_t>(4, count));
    // k - 1 distinct cut points in 1..count-1 give k non-empty groups.
    std::vector<std::size_t> cuts(count - 1);
    std::iota(cuts.begin(), cuts.end(), 1);
    std::shuffle(cuts.begin(), cuts.end(), rng_);
    cuts.resize(k - 1);
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(count);
    std::vector<ProcessTree> kids;
    std::size_t lo = 0;
    for (auto hi : cuts) {
      kids.push_back(build(first + lo, hi - lo));
      lo = hi;
    }
    return ProcessTree::node(op, std::move(kids));
  }

 private:
  Rng& rng_;
  std::vector<double> weights_;
};

// Uniformly random shuffle of several words.
Trace random_interleaving(std::vector<Trace> words, Rng& rng) {
  Trace out;
  std::vector<std::size_t> pos(words.size(), 0);
  std::size_t remaining = 0;
  for (const auto& w : words) remaining += w.size();
  while (remaining > 0) {
    std::size_t r = uniform(rng, 0, remaining - 1);
    for (std::size_t i = 0; i < words.size(); ++i) {
      const auto left = words[i].size() - pos[i];
      if (r < left) {
        out.push_back(words[i][pos[i]++]);
        break;
      }
      r -= left;
    }
    --remaining;
  }
  return out;
}

// One full child interleaved with a random prefix of a random non-empty
// subset of the others.
template <typename Play>
Trace play_inclusive(std::size_t n, Rng& rng, Play play) {
  std::vector<std::size_t> subset;
  while (subset.empty())
    for (std::size_t i = 0; i < n; ++i)
      if (coin(rng)) subset.push_back(i);
  const std::size_t full = subset[uniform(rng, 0, subset.size() - 1)];
  std::vector<Trace> others;
  for (auto i : subset)
    if (i != full) others.push_back(play(i));
  Trace partial = random_interleaving(std::move(others), rng);
  partial.resize(uniform(rng, 0, partial.size()));
  return random_interleaving({play(full), std::move(partial)}, rng);
}

class PtSampler {
 public:
  PtSampler(Rng& rng, std::size_t max_loop) : rng_(rng), max_loop_(max_loop) {}

  Trace play(const ProcessTree& t) {
    Trace out;
    switch (t.op) {
      case PtOp::Leaf:
        if (!t.action.silent) out.push_back(t.action.name);
        break;
      case PtOp::Seq:
        for (const auto& c : t.children) append(out, play(c));
        break;
      case PtOp::Xor: out = play(t.children[uniform(rng_, 0, t.children.size() - 1)]); break;
      case PtOp::And: {
        std::vector<Trace> words;
        for (const auto& c : t.children) words.push_back(play(c));
        out = random_interleaving(std::move(words), rng_);
        break;
      }
      case PtOp::Or:
        out = play_inclusive(t.children.size(), rng_, [&](std::size_t i) { return play(t.children[i]); });
        break;
      case PtOp::Loop:
        append(out, play(t.children.front()));
        for (std::size_t k = 0; k < max_loop_ && coin(rng_); ++k) {
          append(out, play(t.children[uniform(rng_, 1, t.children.size() - 1)]));
          append(out, play(t.children.front()));
        }
        break;
      case PtOp::Rep:
        for (std::size_t k = 0; k < max_loop_ && coin(rng_); ++k) append(out, play(t.children.front()));
        break;
    }
    return out;
  }

 private:
  static void append(Trace& out, const Trace& more) { out.insert(out.end(), more.begin(), more.end()); }

  Rng& rng_;
  std::size_t max_loop_;
};

class AtSampler {
 public:
  AtSampler(Rng& rng, std::size_t max_loop) : rng_(rng), max_loop_(max_loop) {}

  Trace play(const AttackTree& t) {
    Trace out;
    switch (t.node) {
      case AtNode::Leaf:
        if (!t.label.silent) out.push_back(t.label.name);
        return out;
      case AtNode::Rep:
        for (std::size_t k = 0; k < max_loop_ && coin(rng_); ++k) {
          Trace more = play(t.children.front());
          out.insert(out.end(), more.begin(), more.end());
        }
        return out;
      case AtNode::Gate: break;
    }
    switch (t.gate) {
      case GateKind::Sand:
        for (const auto& c : t.children) {
          Trace more = play(c);
          out.insert(out.end(), more.begin(), more.end());
        }
        break;
      case GateKind::Xor: out = play(t.children[uniform(rng_, 0, t.children.size() - 1)]); break;
      case GateKind::And: {
        std::vector<Trace> words;
        for (const auto& c : t.children) words.push_back(play(c));
        out = random_interleaving(std::move(words), rng_);
        break;
      }
      case GateKind::Or:
        out = play_inclusive(t.children.size(), rng_, [&](std::size_t i) { return play(t.children[i]); });
        break;
    }
    if (!t.label.silent) out.push_back(t.label.name);
    return out;
  }

 private:
  Rng& rng_;
  std::size_t max_loop_;
};

AttackTree sand(std::string label, std::vector<AttackTree> kids) {
  return AttackTree::make_gate(GateKind::Sand, Action::observable(std::move(label)), std::move(kids));
}

void labels_into(const AttackTree& t, std::set<std::string>& out) {
  if (t.node != AtNode::Rep && !t.label.silent) out.insert(t.label.name);
  for (const auto& c : t.children) labels_into(c, out);
}

}  // namespace

ProcessTree gen_tree(const GenConfig& config) {
  config.validate();
  Rng rng(config.seed);
  const std::size_t n =
      draw_triangular(rng, config.min_activities, config.mode_activities, config.max_activities);
  return TreeBuilder(config, rng).build(0, n);
}

LogVariants sample_traces(const ProcessTree& tree, std::size_t n, std::uint64_t seed,
                          std::size_t max_loop) {
  Rng rng(seed);
  PtSampler sampler(rng, max_loop);
  LogVariants log;
  for (std::size_t i = 0; i < n; ++i) log.add(sampler.play(tree));
  return log;
}

LogVariants sample_attack_traces(const AttackTree& tree, std::size_t n, std::uint64_t seed,
                                 std::size_t max_loop) {
  Rng rng(seed);
  AtSampler sampler(rng, max_loop);
  LogVariants log;
  for (std::size_t i = 0; i < n; ++i) log.add(sampler.play(tree));
  return log;
}

LogVariants inject_noise(const LogVariants& log, const NoiseSpec& spec) {
  if (!(spec.probability >= 0.0 && spec.probability <= 1.0))
    throw InputError("noise probability must lie in [0, 1]");
  if (spec.probability > 0.0 && spec.alphabet.empty())
    throw InputError("noise alphabet must not be empty");
  Rng rng(spec.seed);
  std::bernoulli_distribution insert(spec.probability);
  const std::vector<std::string> symbols(spec.alphabet.begin(), spec.alphabet.end());
  auto noisy = [&](const Trace& t) {
    Trace out;
    for (std::size_t gap = 0; gap <= t.size(); ++gap) {
      if (spec.probability > 0.0 && insert(rng))
        out.push_back(symbols[uniform(rng, 0, symbols.size() - 1)]);
      if (gap < t.size()) out.push_back(t[gap]);
    }
    return out;
  };
  LogVariants out;
  for (std::uint64_t i = 0; i < log.empty_trace_count; ++i) out.add(noisy(Trace{}));
  for (const auto& [t, count] : log.variants)
    for (std::uint64_t i = 0; i < count; ++i) out.add(noisy(t));
  return out;
}

AttackTree bypassing_fixture() {
  // Hijack: find an authenticated victim (a), disconnect the client (b, c),
  // then impersonate it (d).
  AttackTree hijack = sand("B", {sand("D", {AttackTree::leaf("a")}),
                                 sand("C", {AttackTree::leaf("b"), AttackTree::leaf("c")}),
                                 AttackTree::leaf("d")});
  // Man-in-the-middle: find an unauthenticated victim (e), then K: impersonate
  // the access point (f) and the new client (g).
  AttackTree mim = sand("E", {sand("F", {AttackTree::leaf("e")}),
                              sand("K", {AttackTree::leaf("f"), AttackTree::leaf("g")})});
  return AttackTree::make_gate(GateKind::Or, Action::observable("A"), {std::move(hijack), std::move(mim)});
}

LogVariants attacker_log(AttackerProfile profile, std::size_t n, std::uint64_t seed) {
  const AttackTree fixture = bypassing_fixture();
  auto branch_goal = [&](const AttackTree& branch) {
    return AttackTree::make_gate(GateKind::Sand, fixture.label, {branch});
  };
  switch (profile) {
    case AttackerProfile::Best:
      return sample_attack_traces(branch_goal(fixture.children[0]), n, seed, 0);
    case AttackerProfile::BestB:
      return sample_attack_traces(branch_goal(fixture.children[1]), n, seed, 0);
    case AttackerProfile::Average:
    case AttackerProfile::Worst: {
      NoiseSpec spec;
      spec.probability = profile == AttackerProfile::Average ? 0.25 : 0.5;
      labels_into(fixture, spec.alphabet);
      spec.alphabet.erase(fixture.label.name);
      spec.seed = split_seed(seed, 1);
      return inject_noise(sample_attack_traces(fixture, n, seed, 0), spec);
    }
  }
  return {};
}

}  // namespace atmine
