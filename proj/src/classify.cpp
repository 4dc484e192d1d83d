#include "hibi/classify.hpp"

#include <algorithm>
#include <set>

namespace hibi {

namespace {

// `down` is always a down-set of P, so lower covers inside it are the
// lower covers in P.
void decompose(const Poset& p, const std::vector<Index>& down, std::vector<TraceStep>& out) {
  std::vector<Index> tops;
  for (Index x : down) {
    if (p.lower_covers(x).size() >= 2) tops.push_back(x);
  }
  if (tops.empty()) {
    out.push_back({TraceStep::Kind::Base, 0, 0, down, {}});
    return;
  }
  Index v = tops.front();
  for (Index t : tops) {
    if (p.less(v, t)) v = t;
  }
  std::vector<Index> above, below, aside;
  for (Index x : down) {
    if (x == v) continue;
    if (p.less(v, x)) {
      above.push_back(x);
    } else if (p.less(x, v)) {
      below.push_back(x);
    } else {
      aside.push_back(x);
    }
  }
  decompose(p, below, out);
  out.push_back({TraceStep::Kind::Base, 0, 0, above, {}});
  out.push_back({TraceStep::Kind::SplitAt, v, 0, above, below});
  std::set<Index> rest(aside.begin(), aside.end());
  for (Index x : p.topological_order()) {
    if (rest.count(x)) {
      out.push_back({TraceStep::Kind::Attach, x, p.lower_covers(x).front(), {}, {}});
    }
  }
}

std::string join(const Poset& p, const std::vector<Index>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + p.name(xs[i]);
  return s + "}";
}

}  // namespace

Classification classify_top_nodes(const Poset& poset) {
  Classification result;
  const auto tops = top_nodes(poset);
  for (std::size_t i = 0; i < tops.size(); ++i) {
    for (std::size_t j = i + 1; j < tops.size(); ++j) {
      if (!poset.comparable(tops[i], tops[j])) {
        result.verdict = Coverage::NotCovered;
        result.witness = std::make_pair(tops[i], tops[j]);
        return result;
      }
    }
  }
  std::vector<Index> all;
  for (Index i = 1; i <= poset.size(); ++i) all.push_back(i);
  decompose(poset, all, result.trace);
  return result;
}

bool verify_trace(const Poset& p, const Classification& c, std::string* why) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  if (c.verdict != Coverage::Covered) return fail("not a Covered classification");

  std::vector<std::set<Index>> stack;
  for (std::size_t k = 0; k < c.trace.size(); ++k) {
    const TraceStep& s = c.trace[k];
    const std::string at = "step " + std::to_string(k) + ": ";
    switch (s.kind) {
      case TraceStep::Kind::Base: {
        if (!top_nodes(induced_subposet(p, s.members)).empty()) {
          return fail(at + "base part has a top node");
        }
        stack.emplace_back(s.members.begin(), s.members.end());
        break;
      }
      case TraceStep::Kind::SplitAt: {
        if (stack.size() < 2) return fail(at + "split needs two parts");
        std::set<Index> upper = std::move(stack.back());
        stack.pop_back();
        std::set<Index> lower = std::move(stack.back());
        stack.pop_back();
        if (upper != std::set<Index>(s.members.begin(), s.members.end()) ||
            lower != std::set<Index>(s.lower.begin(), s.lower.end())) {
          return fail(at + "parts do not match the recorded split");
        }
        const Index v = s.node;
        if (v < 1 || v > p.size() || upper.count(v) || lower.count(v)) {
          return fail(at + "bad split node");
        }
        for (Index x : lower) {
          if (!p.less(x, v)) return fail(at + p.name(x) + " is not below the split node");
        }
        for (Index y : upper) {
          if (!p.less(v, y)) return fail(at + p.name(y) + " is not above the split node");
        }
        // v must sit exactly on the maximal elements of the lower part.
        std::set<Index> lower_max;
        for (Index x : lower) {
          bool maximal = std::none_of(lower.begin(), lower.end(),
                                      [&](Index y) { return p.less(x, y); });
          if (maximal) lower_max.insert(x);
        }
        auto lc = p.lower_covers(v);
        std::set<Index> v_lower(lc.begin(), lc.end());
        if (lower.empty() ? v_lower != std::set<Index>{kBottom} : v_lower != lower_max) {
          return fail(at + "split node is not the joint of an ordinal sum");
        }
        lower.insert(v);
        lower.insert(upper.begin(), upper.end());
        stack.push_back(std::move(lower));
        break;
      }
      case TraceStep::Kind::Attach: {
        if (stack.empty()) return fail(at + "attach with no part");
        auto& top = stack.back();
        const Index x = s.node;
        if (x < 1 || x > p.size() || top.count(x)) return fail(at + "bad attached node");
        auto lc = p.lower_covers(x);
        if (lc.size() != 1 || lc.front() != s.target) {
          return fail(at + p.name(x) + " does not cover exactly " + p.name(s.target));
        }
        if (s.target != kBottom && !top.count(s.target)) {
          return fail(at + "attach target not built yet");
        }
        for (Index u : p.upper_covers(x)) {
          if (top.count(u)) return fail(at + "attached node lies below an existing element");
        }
        top.insert(x);
        break;
      }
    }
  }
  std::set<Index> all;
  for (Index i = 1; i <= p.size(); ++i) all.insert(i);
  if (stack.size() != 1 || stack.front() != all) {
    return fail("trace does not rebuild the whole poset");
  }
  return true;
}

std::string describe(const Poset& p, const TraceStep& s) {
  switch (s.kind) {
    case TraceStep::Kind::Base:
      return "Base " + join(p, s.members);
    case TraceStep::Kind::SplitAt:
      return "SplitAt " + p.name(s.node) + " upper=" + join(p, s.members) +
             " lower=" + join(p, s.lower);
    case TraceStep::Kind::Attach:
      return "Attach " + p.name(s.node) + " on " + p.name(s.target);
  }
  return {};
}

}  // namespace hibi
