#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hibi/poset.hpp"

namespace hibi {

/// Dense row-major integer matrix; rows are indexed by P-bar, columns by m.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::int64_t> data;

  Matrix() = default;
  Matrix(int rows, int cols, std::int64_t fill = 0);
  static Matrix from_rows(const std::vector<std::vector<std::int64_t>>& rows);
  std::vector<std::vector<std::int64_t>> to_rows() const;

  std::int64_t& at(int i, int m) { return data[static_cast<std::size_t>(i) * cols + m]; }
  std::int64_t at(int i, int m) const { return data[static_cast<std::size_t>(i) * cols + m]; }
  std::span<const std::int64_t> row(int i) const {
    return {data.data() + static_cast<std::size_t>(i) * cols, static_cast<std::size_t>(cols)};
  }
  friend bool operator==(const Matrix&, const Matrix&) = default;
};

using DeltaMatrix = Matrix;

/// Residues alpha_{i,m} in [0, q-1].
struct AlphaMatrix {
  Matrix entries;
  std::int64_t q = 2;
  friend bool operator==(const AlphaMatrix&, const AlphaMatrix&) = default;
};

/// Validates the entry range; throws PreconditionError.
AlphaMatrix make_alpha(Matrix entries, std::int64_t q);

/// Every row sum is congruent to r_i mod q.
bool rows_congruent(const AlphaMatrix& a, std::span<const std::int64_t> r);

struct EpsilonTable {
  std::vector<Cover> covers;                      // P.covers() order
  std::vector<std::vector<std::int64_t>> eps;     // eps[cover][m]
  std::vector<std::int64_t> n;                    // N_j per row
};

EpsilonTable epsilon_and_n(const Poset& poset, const AlphaMatrix& a);

/// Per-row interval [lower_i, upper_i] containing every solution entry.
struct SearchBox {
  std::vector<std::int64_t> lower;
  std::vector<std::int64_t> upper;
};

SearchBox delta_search_box(const Poset& poset, const AlphaMatrix& a);

/// The constraint system in solver form: entry bounds, row sums and
/// difference constraints x[upper][m] <= eps[m] + x[lower][m].
struct DeltaProblem {
  int rows = 0;
  int cols = 0;
  std::vector<std::int64_t> lo;
  std::vector<std::int64_t> hi;
  std::vector<std::int64_t> sums;
  struct Edge {
    int lower = 0;
    int upper = 0;
    std::vector<std::int64_t> eps;
  };
  std::vector<Edge> edges;
  std::vector<std::string> row_names;
};

/// Builds the system for (P, alpha). Maximal rows get the floor 0 from
/// condition (a). `widen` enlarges every box interval on both sides.
DeltaProblem make_problem(const Poset& poset, const AlphaMatrix& a, int widen = 0);

struct SolveOptions {
  bool trace = false;
  int widen = 0;
};

struct SolveResult {
  std::optional<DeltaMatrix> delta;
  std::vector<std::string> trace;
  std::uint64_t nodes = 0;
  bool feasible() const { return delta.has_value(); }
};

/// Depth-first search over entries in row-major order with bound
/// propagation. Complete on the box and returns the lexicographically
/// least solution.
SolveResult solve_problem(const DeltaProblem& problem, bool trace = false);

SolveResult solve(const Poset& poset, const AlphaMatrix& a, SolveOptions options = {});

struct Violation {
  char condition = 'a';  // 'a', 'b' or 'c'
  Index row = 0;
  Index other = 0;       // lower end of the cover for (b)
  int column = -1;       // 0-based; -1 for row conditions
  std::string detail;
};

std::vector<Violation> validate(const Poset& poset, const AlphaMatrix& a, const DeltaMatrix& d);

}  // namespace hibi
