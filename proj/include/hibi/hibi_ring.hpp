#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hibi/poset.hpp"
#include "hibi/toric.hpp"

namespace hibi {

/// Exponents over x_0 = t, x_1, ..., x_d.
using ExponentVector = std::vector<std::int64_t>;

enum class ZStrategy { LongestPath, IdealCount };

std::string to_string(ZStrategy s);
/// "longest-path" or "ideal-count"; throws ParseError otherwise.
ZStrategy parse_z_strategy(std::string_view text);

struct ZElement {
  ExponentVector r;
  ZStrategy strategy = ZStrategy::LongestPath;
  std::int64_t max_exponent() const;
};

/// One generator t * prod_{v in I} x_v per ideal, in enumerate_ideals order.
std::vector<ExponentVector> generators(const Poset& poset);

/// a >= 0 and a_j <= a_i for every cover i < j of P-bar.
bool contains_monomial(const Poset& poset, std::span<const std::int64_t> a);

ZElement z_element(const Poset& poset, ZStrategy strategy = ZStrategy::LongestPath);

/// Rays e_i - e_j for each cover (i, j) and e_i for each maximal element.
Cone hibi_cone(const Poset& poset);

/// Krull dimension d + 1.
int ring_dimension(const Poset& poset);

/// Longest upward path (in cover edges) from each index to a maximal element.
std::vector<int> longest_up_paths(const Poset& poset);
/// Shortest upward path from each index to a maximal element.
std::vector<int> shortest_up_paths(const Poset& poset);

}  // namespace hibi
