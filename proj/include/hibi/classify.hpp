#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hibi/poset.hpp"

namespace hibi {

enum class Coverage { Covered, NotCovered };

/// One step of the construction of a poset whose top nodes form a chain.
/// Steps act on a stack of partially built subposets (all indices refer to
/// the classified poset):
///   Base     pushes `members`, a subposet without top nodes;
///   SplitAt  pops the upper part (`members`) and the lower part (`lower`)
///            and pushes lower + node + upper, the ordinal sum with `node`
///            playing the adjoined minimum of the upper part;
///   Attach   adds `node`, whose only lower cover is `target`, to the top
///            of the stack.
struct TraceStep {
  enum class Kind { Base, SplitAt, Attach };
  Kind kind = Kind::Base;
  Index node = 0;
  Index target = 0;
  std::vector<Index> members;
  std::vector<Index> lower;
  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct Classification {
  Coverage verdict = Coverage::Covered;
  std::vector<TraceStep> trace;                    // Covered only
  std::optional<std::pair<Index, Index>> witness;  // NotCovered only
};

/// Covered iff the top nodes are pairwise comparable. Covered results carry
/// the recursive decomposition at the largest top node; NotCovered results
/// carry the first incomparable pair in index order.
Classification classify_top_nodes(const Poset& poset);

/// Replays a Covered trace against `poset`. On failure returns false and
/// describes the first bad step in `why`.
bool verify_trace(const Poset& poset, const Classification& c, std::string* why = nullptr);

std::string describe(const Poset& poset, const TraceStep& step);

}  // namespace hibi
