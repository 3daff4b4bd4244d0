#include "atmine/traces.hpp"

#include <algorithm>

namespace atmine {

bool TraceSet::insert_capped(Trace t, const Bounds& bounds) {
  if (t.size() > bounds.max_trace_len) {
    truncated = true;
    return false;
  }
  if (traces.size() >= bounds.max_traces && !contains(t)) {
    truncated = true;
    return false;
  }
  traces.insert(std::move(t));
  return true;
}

void TraceSet::unite(const TraceSet& other, const Bounds& bounds) {
  truncated = truncated || other.truncated;
  for (const auto& t : other.traces) insert_capped(t, bounds);
}

namespace {

void shuffle_into(const Trace& w1, std::size_t i, const Trace& w2, std::size_t j, Trace& buf,
                  TraceSet& out, const Bounds& bounds) {
  if (i == w1.size() && j == w2.size()) {
    out.insert_capped(buf, bounds);
    return;
  }
  if (i < w1.size()) {
    buf.push_back(w1[i]);
    shuffle_into(w1, i + 1, w2, j, buf, out, bounds);
    buf.pop_back();
  }
  if (j < w2.size()) {
    buf.push_back(w2[j]);
    shuffle_into(w1, i, w2, j + 1, buf, out, bounds);
    buf.pop_back();
  }
}

void interleave_into(const Trace& w1, const Trace& w2, TraceSet& out, const Bounds& bounds) {
  if (w1.size() + w2.size() > bounds.max_trace_len) {
    out.truncated = true;
    return;
  }
  Trace buf;
  buf.reserve(w1.size() + w2.size());
  shuffle_into(w1, 0, w2, 0, buf, out, bounds);
}

TraceSet interleave_nonempty(const TraceSet& a, const TraceSet& b, const Bounds& bounds) {
  TraceSet out;
  out.truncated = a.truncated || b.truncated;
  for (const auto& w1 : a.traces)
    for (const auto& w2 : b.traces) interleave_into(w1, w2, out, bounds);
  return out;
}

}  // namespace

TraceSet interleave_words(const Trace& w1, const Trace& w2, const Bounds& bounds) {
  TraceSet out;
  interleave_into(w1, w2, out, bounds);
  return out;
}

TraceSet interleave_sets(const TraceSet& a, const TraceSet& b, const Bounds& bounds) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return interleave_nonempty(a, b, bounds);
}

TraceSet concat_sets(const TraceSet& a, const TraceSet& b, const Bounds& bounds) {
  TraceSet out;
  out.truncated = a.truncated || b.truncated;
  for (const auto& w1 : a.traces) {
    for (const auto& w2 : b.traces) {
      if (w1.size() + w2.size() > bounds.max_trace_len) {
        out.truncated = true;
        continue;
      }
      Trace t;
      t.reserve(w1.size() + w2.size());
      t.insert(t.end(), w1.begin(), w1.end());
      t.insert(t.end(), w2.begin(), w2.end());
      out.insert_capped(std::move(t), bounds);
    }
  }
  return out;
}

TraceSet prefixes(const TraceSet& a) {
  TraceSet out;
  out.truncated = a.truncated;
  for (const auto& w : a.traces)
    for (std::size_t n = 0; n <= w.size(); ++n) out.traces.emplace(w.begin(), w.begin() + n);
  return out;
}

TraceSet bounded_star(const TraceSet& a, const Bounds& bounds) {
  TraceSet result = TraceSet::epsilon();
  result.truncated = a.truncated;
  TraceSet power = TraceSet::epsilon();
  for (std::size_t k = 1; k <= bounds.max_loop; ++k) {
    power = concat_sets(power, a, bounds);
    const auto before = result.size();
    result.unite(power, bounds);
    // Only epsilon-or-repeated members: later powers add nothing.
    if (result.size() == before && !power.truncated) break;
  }
  // Any non-empty member makes the unbounded closure strictly larger.
  const bool infinite = std::any_of(a.traces.begin(), a.traces.end(),
                                    [](const Trace& t) { return !t.empty(); });
  result.truncated = result.truncated || infinite;
  return result;
}

TraceSet append_action(const TraceSet& a, const Action& label, const Bounds& bounds) {
  if (label.silent) return a;
  return concat_sets(a, TraceSet{Trace{label.name}}, bounds);
}

namespace compose {

TraceSet interleave_all(std::span<const TraceSet> family, const Bounds& bounds) {
  if (family.empty()) return TraceSet::epsilon();
  TraceSet acc = family.front();
  for (const auto& member : family.subspan(1)) {
    if (acc.empty() || member.empty()) {
      TraceSet none;
      none.truncated = true;
      return none;
    }
    acc = interleave_nonempty(acc, member, bounds);
  }
  return acc;
}

TraceSet concat_all(std::span<const TraceSet> family, const Bounds& bounds) {
  TraceSet acc = TraceSet::epsilon();
  for (const auto& member : family) acc = concat_sets(acc, member, bounds);
  return acc;
}

TraceSet union_all(std::span<const TraceSet> family, const Bounds& bounds) {
  TraceSet acc;
  for (const auto& member : family) acc.unite(member, bounds);
  return acc;
}

TraceSet inclusive_choice(std::span<const TraceSet> langs, std::span<const TraceSet> prefix_langs,
                          const Bounds& bounds) {
  TraceSet out;
  std::vector<TraceSet> others;
  for (std::size_t i = 0; i < langs.size(); ++i) {
    others.clear();
    for (std::size_t j = 0; j < prefix_langs.size(); ++j)
      if (j != i) others.push_back(prefix_langs[j]);
    const TraceSet partial = interleave_all(others, bounds);
    out.unite(interleave_all(std::vector<TraceSet>{langs[i], partial}, bounds), bounds);
  }
  return out;
}

TraceSet concat_prefixes(std::span<const TraceSet> langs, std::span<const TraceSet> prefix_langs,
                         const Bounds& bounds) {
  TraceSet out = TraceSet::epsilon();
  TraceSet head = TraceSet::epsilon();
  for (std::size_t i = 0; i < langs.size(); ++i) {
    out.unite(concat_sets(head, prefix_langs[i], bounds), bounds);
    head = concat_sets(head, langs[i], bounds);
    if (head.empty()) break;
  }
  return out;
}

TraceSet star_prefixes(const TraceSet& lang, const TraceSet& prefix_lang, const Bounds& bounds) {
  if (bounds.max_loop == 0) return TraceSet::epsilon();
  Bounds fewer = bounds;
  fewer.max_loop = bounds.max_loop - 1;
  TraceSet out = concat_sets(bounded_star(lang, fewer), prefix_lang, bounds);
  out.insert_capped(Trace{}, bounds);
  return out;
}

}  // namespace compose

std::string to_string(const Trace& t) {
  std::string out = "<";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ",";
    out += t[i];
  }
  return out + ">";
}

}  // namespace atmine
