#pragma once

#include <cstddef>
#include <limits>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace atmine {

/// An action symbol. Silent actions (tau) denote the empty sequence and never
/// appear inside a Trace.
struct Action {
  std::string name;
  bool silent = false;

  static Action observable(std::string n) { return {std::move(n), false}; }
  static Action tau(std::string n = "tau") { return {std::move(n), true}; }

  friend bool operator==(const Action&, const Action&) = default;
  friend auto operator<=>(const Action&, const Action&) = default;
};

/// A finite sequence of observable action names. The empty vector is epsilon.
using Trace = std::vector<std::string>;

/// Enumeration limits. Every enumerator reports when one of them binds.
struct Bounds {
  std::size_t max_loop = 3;
  std::size_t max_traces = 1'000'000;
  std::size_t max_trace_len = 256;

  /// No trace-count or length cap; only max_loop applies.
  static Bounds unlimited(std::size_t loops = 0) {
    return {loops, std::numeric_limits<std::size_t>::max(),
            std::numeric_limits<std::size_t>::max()};
  }
};

/// A finite set of traces. When `truncated` is false the set is the exact
/// language it was computed for.
struct TraceSet {
  std::set<Trace> traces;
  bool truncated = false;

  TraceSet() = default;
  TraceSet(std::initializer_list<Trace> ts) : traces(ts) {}
  explicit TraceSet(std::set<Trace> ts, bool trunc = false)
      : traces(std::move(ts)), truncated(trunc) {}

  static TraceSet epsilon() { return TraceSet{Trace{}}; }

  [[nodiscard]] bool empty() const { return traces.empty(); }
  [[nodiscard]] std::size_t size() const { return traces.size(); }
  [[nodiscard]] bool contains(const Trace& t) const { return traces.count(t) != 0; }

  /// Inserts unless a cap forbids it; returns false (and marks truncation)
  /// when the trace was dropped.
  bool insert_capped(Trace t, const Bounds& bounds);
  void unite(const TraceSet& other, const Bounds& bounds);

  friend bool operator==(const TraceSet& a, const TraceSet& b) { return a.traces == b.traces; }
};

/// All shuffles of two words.
TraceSet interleave_words(const Trace& w1, const Trace& w2,
                          const Bounds& bounds = Bounds::unlimited());

/// Set-lifted interleaving. An empty argument yields the other argument
/// unchanged (the empty set is an identity here, not an absorbing element).
TraceSet interleave_sets(const TraceSet& a, const TraceSet& b,
                         const Bounds& bounds = Bounds::unlimited());

/// Pairwise concatenation; {epsilon} is the identity.
TraceSet concat_sets(const TraceSet& a, const TraceSet& b,
                     const Bounds& bounds = Bounds::unlimited());

/// Prefix closure, including epsilon and the full members.
TraceSet prefixes(const TraceSet& a);

/// Union of a^0 .. a^max_loop.
TraceSet bounded_star(const TraceSet& a, const Bounds& bounds);

/// Appends `label` to every member unless it is silent.
TraceSet append_action(const TraceSet& a, const Action& label, const Bounds& bounds);

/// Building blocks shared by the process-tree and attack-tree enumerators.
///
/// Unlike interleave_sets, these treat an empty member as absorbing: a
/// language only becomes empty when every trace was cut by max_trace_len, in
/// which case every combination would have been cut too.
namespace compose {

TraceSet interleave_all(std::span<const TraceSet> family, const Bounds& bounds);
TraceSet concat_all(std::span<const TraceSet> family, const Bounds& bounds);
TraceSet union_all(std::span<const TraceSet> family, const Bounds& bounds);

/// Inclusive choice: one member runs to completion, interleaved with a
/// prefix of the interleaving of the others. `prefix_langs[i]` must be the
/// prefix closure of `langs[i]` (computed directly so that length caps stay
/// exact).
TraceSet inclusive_choice(std::span<const TraceSet> langs,
                          std::span<const TraceSet> prefix_langs, const Bounds& bounds);

/// Prefix closure of a concatenation, given each part and its prefix closure.
TraceSet concat_prefixes(std::span<const TraceSet> langs,
                         std::span<const TraceSet> prefix_langs, const Bounds& bounds);

/// Prefix closure of bounded_star(lang) given the prefix closure of lang.
TraceSet star_prefixes(const TraceSet& lang, const TraceSet& prefix_lang, const Bounds& bounds);

}  // namespace compose

std::string to_string(const Trace& t);

}  // namespace atmine
