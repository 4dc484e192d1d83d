#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace hibi {

/// Position of an element in P-bar. Index 0 is the adjoined minimum; the
/// user's elements occupy 1..d in declaration order.
using Index = int;

inline constexpr Index kBottom = 0;

/// lower is covered by upper (lower < upper with nothing in between).
struct Cover {
  Index lower = 0;
  Index upper = 0;
  auto operator<=>(const Cover&) const = default;
};

/// A finite poset P together with its adjoined minimum, stored as the Hasse
/// diagram of P-bar. Immutable after construction.
///
/// The constructor takes covers between user elements only (1-based
/// indices); a cover (0, k) is added for every minimal element k. The input
/// must be acyclic and irredundant, otherwise CycleError /
/// RedundantCoverError is thrown.
class Poset {
 public:
  Poset();
  Poset(std::vector<std::string> names, std::vector<Cover> user_covers);

  /// Number of user elements d.
  int size() const { return static_cast<int>(names_.size()); }
  /// d + 1, the number of rows of every matrix indexed by P-bar.
  int index_count() const { return size() + 1; }

  /// Display name; index 0 is rendered as "-inf".
  const std::string& name(Index i) const;
  const std::vector<std::string>& names() const { return names_; }
  std::optional<Index> find(std::string_view name) const;

  /// All covers of P-bar, including those from index 0, sorted.
  const std::vector<Cover>& covers() const { return covers_; }
  /// Covers between user elements only (what the file format spells out).
  std::vector<Cover> user_covers() const;

  std::span<const Index> lower_covers(Index i) const { return lower_[i]; }
  std::span<const Index> upper_covers(Index i) const { return upper_[i]; }

  /// Strict order of P-bar.
  bool less(Index a, Index b) const { return a != b && above_[a].test(b); }
  bool comparable(Index a, Index b) const { return a == b || less(a, b) || less(b, a); }
  /// Maximal in P-bar (no upper covers). For nonempty P these are exactly
  /// the maximal elements of P; for the empty poset it is the minimum.
  bool is_maximal(Index i) const { return upper_[i].empty(); }
  std::vector<Index> maximal_elements() const;

  /// Indices of P-bar in an order where every lower cover precedes its
  /// upper covers (Kahn order, ties by index).
  const std::vector<Index>& topological_order() const { return topo_; }

  /// Longest chain of P-bar measured in cover edges from the minimum.
  int height() const;

  /// Canonical poset-file text; parse_poset(to_text()) == *this.
  std::string to_text() const;
  /// Hex SHA-256 of to_text().
  std::string digest() const;

  friend bool operator==(const Poset& a, const Poset& b) {
    return a.names_ == b.names_ && a.covers_ == b.covers_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<Cover> covers_;
  std::vector<std::vector<Index>> lower_;
  std::vector<std::vector<Index>> upper_;
  std::vector<boost::dynamic_bitset<>> above_;  // above_[a][b] iff a < b
  std::vector<Index> topo_;
};

/// Downward closed subset of {1..d}; members sorted ascending.
struct PosetIdeal {
  std::vector<Index> members;
  auto operator<=>(const PosetIdeal&) const = default;
};

/// Parses the poset file format:
///
///     # comment
///     elements: a b c
///     covers: a<b a<c
///
/// The elements line may be omitted, in which case elements are declared
/// by first appearance in the covers line.
Poset parse_poset(std::string_view text);

/// All order ideals, sorted by (size, member list).
std::vector<PosetIdeal> enumerate_ideals(const Poset& poset);

bool is_ideal(const Poset& poset, std::span<const Index> members);

/// Elements with two or more lower covers in P-bar.
std::vector<Index> top_nodes(const Poset& poset);

/// Adds a new maximal element `name` whose only lower cover is `target`
/// (0 makes it minimal). The new element gets index d + 1.
Poset attach_node(const Poset& poset, Index target, std::string name);

/// Ordinal sum of upper-bar over lower: the adjoined minimum of `upper`
/// becomes an ordinary element named `joint_name` that sits above every
/// element of `lower`. Element order: lower's elements, joint, upper's.
Poset ordinal_sum(const Poset& upper, const Poset& lower,
                  std::string joint_name = "bottom");

/// Subposet on the given user indices with the induced order. Names keep
/// the relative index order.
Poset induced_subposet(const Poset& poset, std::span<const Index> members);

/// Convenience constructors used by tests and the corpus.
Poset make_chain(int length, std::string_view prefix = "c");
Poset make_antichain(int count, std::string_view prefix = "a");

}  // namespace hibi
