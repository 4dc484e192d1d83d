#include "hibi/hibi_ring.hpp"

#include <algorithm>

#include "hibi/errors.hpp"

namespace hibi {

std::string to_string(ZStrategy s) {
  return s == ZStrategy::LongestPath ? "longest-path" : "ideal-count";
}

ZStrategy parse_z_strategy(std::string_view text) {
  if (text == "longest-path") return ZStrategy::LongestPath;
  if (text == "ideal-count") return ZStrategy::IdealCount;
  throw ParseError("unknown z strategy '" + std::string(text) + "'");
}

std::int64_t ZElement::max_exponent() const {
  return r.empty() ? 0 : *std::max_element(r.begin(), r.end());
}

std::vector<ExponentVector> generators(const Poset& poset) {
  std::vector<ExponentVector> out;
  for (const auto& ideal : enumerate_ideals(poset)) {
    ExponentVector e(poset.index_count(), 0);
    e[0] = 1;
    for (Index v : ideal.members) e[v] = 1;
    out.push_back(std::move(e));
  }
  return out;
}

bool contains_monomial(const Poset& poset, std::span<const std::int64_t> a) {
  if (static_cast<int>(a.size()) != poset.index_count()) {
    throw ShapeError("exponent vector has length " + std::to_string(a.size()) + ", expected " +
                     std::to_string(poset.index_count()));
  }
  if (std::any_of(a.begin(), a.end(), [](auto x) { return x < 0; })) return false;
  for (const Cover& c : poset.covers()) {
    if (a[c.upper] > a[c.lower]) return false;
  }
  return true;
}

std::vector<int> longest_up_paths(const Poset& poset) {
  std::vector<int> len(poset.index_count(), 0);
  const auto& topo = poset.topological_order();
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    for (Index u : poset.upper_covers(*it)) len[*it] = std::max(len[*it], len[u] + 1);
  }
  return len;
}

std::vector<int> shortest_up_paths(const Poset& poset) {
  std::vector<int> len(poset.index_count(), 0);
  const auto& topo = poset.topological_order();
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    auto ups = poset.upper_covers(*it);
    if (ups.empty()) continue;
    int best = len[ups.front()] + 1;
    for (Index u : ups) best = std::min(best, len[u] + 1);
    len[*it] = best;
  }
  return len;
}

ZElement z_element(const Poset& poset, ZStrategy strategy) {
  ZElement z;
  z.strategy = strategy;
  if (strategy == ZStrategy::LongestPath) {
    auto len = longest_up_paths(poset);
    z.r.assign(len.begin(), len.end());
    return z;
  }
  z.r.assign(poset.index_count(), 0);
  for (const auto& ideal : enumerate_ideals(poset)) {
    ++z.r[0];
    for (Index v : ideal.members) ++z.r[v];
  }
  return z;
}

Cone hibi_cone(const Poset& poset) {
  const int dim = poset.index_count();
  std::vector<IntVector> rays;
  for (const Cover& c : poset.covers()) {
    IntVector v(dim, 0);
    v[c.lower] = 1;
    v[c.upper] = -1;
    rays.push_back(std::move(v));
  }
  for (Index m : poset.maximal_elements()) {
    IntVector v(dim, 0);
    v[m] = 1;
    rays.push_back(std::move(v));
  }
  return make_cone(dim, std::move(rays));
}

int ring_dimension(const Poset& poset) { return poset.index_count(); }

}  // namespace hibi
