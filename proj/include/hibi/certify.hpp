#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hibi/delta.hpp"
#include "hibi/hibi_ring.hpp"
#include "hibi/poset.hpp"
#include "hibi/toric.hpp"

namespace hibi {

/// The residue matrices for (P, r, q, n) with every row sum congruent to
/// r_i. Each row is chosen by an index c in [0, q^(n-1)) whose base-q
/// digits are the first n-1 entries; the last entry is forced. Matrices
/// are numbered row-major with row 0 most significant, which is the
/// lexicographic order of the matrices themselves.
class AlphaSpace {
 public:
  AlphaSpace(Poset poset, ZElement z, std::int64_t q, int n);

  const Poset& poset() const { return poset_; }
  const ZElement& z() const { return z_; }
  std::int64_t q() const { return q_; }
  int n() const { return n_; }
  int rows() const { return poset_.index_count(); }

  /// q^(n-1).
  std::uint64_t row_choices() const { return row_choices_; }
  /// q^((d+1)(n-1)).
  std::uint64_t size() const { return size_; }

  void row_values(int row, std::uint64_t choice, std::int64_t* out) const;
  AlphaMatrix at(std::uint64_t index) const;
  /// Throws PreconditionError when `a` is not in the space.
  std::uint64_t index_of(const AlphaMatrix& a) const;

  template <class F>
  void for_each(F&& f) const {
    for (std::uint64_t i = 0; i < size_; ++i) f(i, at(i));
  }

 private:
  Poset poset_;
  ZElement z_;
  std::int64_t q_;
  int n_;
  std::uint64_t row_choices_ = 1;
  std::uint64_t size_ = 1;
};

/// Throws PreconditionError unless q > max r_i and n >= 1.
AlphaSpace alpha_space(const Poset& poset, const ZElement& z, std::int64_t q, int n);

enum class VerdictKind { Certificate, Refutation };
enum class StoreDeltas { Auto, On, Off };

std::string to_string(VerdictKind k);

struct CertifyOptions {
  ZStrategy strategy = ZStrategy::LongestPath;
  int jobs = 1;
  StoreDeltas store_deltas = StoreDeltas::Auto;
  /// Plain enumeration of every alpha with a signature cache instead of
  /// the memoized row-by-row search. Used as a cross-check.
  bool reference = false;
};

struct Verdict {
  VerdictKind kind = VerdictKind::Certificate;
  std::string poset_digest;
  int n = 1;
  std::int64_t q = 2;
  ZElement z;
  std::uint64_t total = 0;
  std::uint64_t checked_count = 0;
  std::optional<AlphaMatrix> witness;
  std::optional<std::uint64_t> witness_index;
  /// Solutions keyed by alpha_digest, when storage was enabled.
  std::map<std::string, DeltaMatrix> deltas;
  bool deltas_stored = false;
  /// Distinct (N, eps) systems that were actually solved.
  std::uint64_t systems_solved = 0;
};

Verdict certify(const Poset& poset, int n, std::int64_t q, const CertifyOptions& options = {});

/// Hex SHA-256 of the matrix text "q;row;row;..." with comma-separated rows.
std::string alpha_digest(const AlphaMatrix& a);

bool is_prime_power(std::int64_t q);

/// Smallest q >= 2 with q > max r_i.
std::int64_t smallest_admissible_q(const ZElement& z);

// ---- single-node extension ----

struct ExtendedSolve {
  enum class Route { Greedy, Exact, BaseInfeasible, Infeasible };
  Route route = Route::Greedy;
  std::optional<DeltaMatrix> delta;
  Poset extended;
  std::string provenance;
  bool feasible() const { return delta.has_value(); }
};

std::string to_string(ExtendedSolve::Route r);

/// `a` has one row more than `base`; its last row belongs to a new maximal
/// node whose only lower cover is `target`. Solves `base` on the first
/// rows, then fills the new row greedily under the caps
/// eps_m + delta_{target,m}. When the greedy fill cannot reach N_new the
/// extended system is solved directly.
ExtendedSolve solve_extended(const Poset& base, Index target, const AlphaMatrix& a);

/// Name used for the node added by solve_extended.
std::string fresh_name(const Poset& poset, std::string stem = "new");

// ---- folding ----

/// Integer t with x - t in (-1, 1 - 1/(2k)]^k and all pairwise differences
/// of x - t at most 1 - 1/(2k) in absolute value.
std::vector<std::int64_t> fold_to_window(const std::vector<Rational>& x);

// ---- splittings ----

/// Returns the stored or computed delta for a residue matrix, or nullopt.
using DeltaProvider = std::function<std::optional<DeltaMatrix>(const AlphaMatrix&)>;

DeltaProvider solver_provider(const Poset& poset);
/// Looks alpha up in a Verdict's stored deltas.
DeltaProvider verdict_provider(const Verdict& verdict);

struct SplittingImage {
  bool zero = false;
  Matrix exponents;
};

/// Image of prod x_{i,m}^{a_{i,m}/q} under the monomial splitting built
/// from delta: zero when some row sum is off the congruence class of r_i,
/// otherwise floor(a/q) + delta entrywise. Throws MissingDeltaError when
/// the provider has nothing for the residue matrix.
SplittingImage apply_splitting(const Poset& poset, const ZElement& z, std::int64_t q, const Matrix& lifts,
                               const DeltaProvider& provider);

// ---- the diamond counterexample ----

struct TheoremCReport {
  Poset diamond;
  ZElement z;
  AlphaMatrix alpha;
  bool congruent = false;
  EpsilonTable table;
  SearchBox box;
  SolveResult solve;
};

/// Throws PreconditionError for q <= 2.
TheoremCReport reproduce_theorem_c(std::int64_t q);

Poset diamond_poset();

}  // namespace hibi
