#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

namespace hibi {

using Rational = boost::rational<std::int64_t>;
using IntVector = std::vector<std::int64_t>;

/// A rational polyhedral cone given by its primitive ray generators.
struct Cone {
  int dimension = 0;
  std::vector<IntVector> rays;
  friend bool operator==(const Cone&, const Cone&) = default;
};

/// Checks the ray invariants (length, nonzero, primitive, distinct) and
/// builds the cone; throws ShapeError / PreconditionError otherwise.
Cone make_cone(int dimension, std::vector<IntVector> rays);

/// v divided by the gcd of its entries. Throws PreconditionError on zero.
IntVector primitive_generator(IntVector v);

/// Interior of the anticanonical polytope: <u, v_rho> > -1 for every ray.
bool in_open_anticanonical(const Cone& cone, std::span<const Rational> u);
/// Same test for u = numerators / q, evaluated in integers.
bool in_open_anticanonical_scaled(const Cone& cone, std::span<const std::int64_t> numerators,
                                  std::int64_t q);
/// Closed polytope: <u, v_rho> >= -1 for every ray.
bool in_closed_anticanonical_scaled(const Cone& cone, std::span<const std::int64_t> numerators,
                                    std::int64_t q);

/// a = numerators / q, the exponent shift of the monomial map pi_a.
struct PiExponent {
  IntVector numerators;
  std::int64_t q = 1;
};

/// Witnesses for pi_a in D^(n): one row per residue tuple (u_1..u_{n-1}),
/// in enumeration order. All vectors are numerators over q. Row vectors
/// hold v_1..v_{n-1} followed by the remainder v_n = a - sum v_i.
struct DnWitnessTable {
  std::int64_t q = 1;
  int n = 1;
  struct Row {
    std::vector<IntVector> residues;
    std::vector<IntVector> vectors;
  };
  std::vector<Row> rows;
};

struct DnMember {
  DnWitnessTable table;  // empty rows when the table was not requested
};

/// Evidence only: the bounded search found no translates for this tuple.
struct DnNoWitness {
  std::vector<IntVector> residues;
  std::uint64_t tuple_index = 0;
};

struct DnCheckResult {
  std::variant<DnMember, DnNoWitness> outcome;
  std::uint64_t tuples_checked = 0;
  int radius = 0;
  bool member() const { return std::holds_alternative<DnMember>(outcome); }
};

/// Decides, up to the search radius, whether pi_a lies in the n-th diagonal
/// Cartier algebra: for every residue tuple (u_1, ..., u_{n-1}) in
/// ((1/q)Z^D / Z^D)^{n-1} there must be translates v_i = u_i + Z^D with
/// |coordinates| <= radius, every v_i in the open polytope, and
/// a - sum v_i in the open polytope as well.
///
/// Tuples are enumerated in lexicographic order of their numerators; the
/// first tuple without translates is reported. `jobs` > 1 evaluates tuples
/// concurrently with the same result.
DnCheckResult check_pi_in_dn(const Cone& cone, const PiExponent& a, int n, int radius,
                             bool keep_table = true, int jobs = 1);

/// Independent re-check of a Member table: every residue tuple appears once
/// in order, translates are congruent and within radius, every vector is in
/// the open polytope (exact rationals) and the vectors sum to a.
bool verify_dn_witness(const Cone& cone, const PiExponent& a, int n, int radius,
                       const DnWitnessTable& table, std::string* why = nullptr);

}  // namespace hibi
