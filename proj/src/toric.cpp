#include "hibi/toric.hpp"

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <numeric>
#include <set>

#include "hibi/detail/ordered_search.hpp"
#include "hibi/errors.hpp"

namespace hibi {

namespace {

std::int64_t floor_mod(std::int64_t x, std::int64_t q) {
  std::int64_t r = x % q;
  return r < 0 ? r + q : r;
}

std::vector<IntVector> decode_tuple(std::uint64_t index, int count, int dim, std::int64_t q) {
  std::vector<IntVector> out(count, IntVector(dim, 0));
  for (int i = count - 1; i >= 0; --i) {
    for (int k = dim - 1; k >= 0; --k) {
      out[i][k] = static_cast<std::int64_t>(index % static_cast<std::uint64_t>(q));
      index /= static_cast<std::uint64_t>(q);
    }
  }
  return out;
}

// Depth-first search for translates of one residue tuple. Vectors are
// numerators over q; a vector w is in the open polytope iff
// <w, rho> >= 1 - q for every ray.
class TranslateSearch {
 public:
  TranslateSearch(const Cone& cone, const PiExponent& a, int n, int radius)
      : cone_(cone), a_(a.numerators), q_(a.q), free_(n - 1), dim_(cone.dimension) {
    const std::int64_t limit = static_cast<std::int64_t>(radius) * q_;
    candidates_.resize(q_);
    for (std::int64_t r = 0; r < q_; ++r) {
      for (std::int64_t w = -limit; w <= limit; ++w) {
        if (floor_mod(w, q_) == r) candidates_[r].push_back(w);
      }
      std::sort(candidates_[r].begin(), candidates_[r].end(), [](auto x, auto y) {
        return std::abs(x) != std::abs(y) ? std::abs(x) < std::abs(y) : x < y;
      });
    }
    const std::size_t rays = cone_.rays.size();
    var_suffix_.assign(rays, IntVector(dim_ + 1, 0));
    rem_suffix_.assign(rays, IntVector(dim_ + 1, 0));
    for (std::size_t p = 0; p < rays; ++p) {
      for (int k = dim_ - 1; k >= 0; --k) {
        const std::int64_t c = cone_.rays[p][k];
        var_suffix_[p][k] = var_suffix_[p][k + 1] + std::abs(c) * limit;
        rem_suffix_[p][k] = rem_suffix_[p][k + 1] + c * a_[k] + std::abs(c) * free_ * limit;
      }
    }
  }

  /// On success fills `found` with v_1..v_{n-1} and the remainder.
  bool run(const std::vector<IntVector>& residues, std::vector<IntVector>& found) {
    residues_ = &residues;
    const std::size_t rays = cone_.rays.size();
    vecs_.assign(free_ + 1, IntVector(dim_, 0));
    partial_.assign(free_ + 1, IntVector(rays, 0));
    if (!dfs(0, 0)) return false;
    found = vecs_;
    return true;
  }

 private:
  bool dfs(int k, int i) {
    if (k == dim_) return true;
    const std::size_t rays = cone_.rays.size();
    const std::int64_t floor = 1 - q_;
    if (i == free_) {
      std::int64_t rem = a_[k];
      for (int j = 0; j < free_; ++j) rem -= vecs_[j][k];
      vecs_[free_][k] = rem;
      bool ok = true;
      for (std::size_t p = 0; p < rays; ++p) {
        const std::int64_t c = cone_.rays[p][k];
        partial_[free_][p] += c * rem;
        if (c != 0 && partial_[free_][p] + rem_suffix_[p][k + 1] < floor) ok = false;
      }
      if (ok && dfs(k + 1, 0)) return true;
      for (std::size_t p = 0; p < rays; ++p) partial_[free_][p] -= cone_.rays[p][k] * rem;
      return false;
    }
    for (std::int64_t w : candidates_[(*residues_)[i][k]]) {
      bool ok = true;
      for (std::size_t p = 0; p < rays; ++p) {
        const std::int64_t c = cone_.rays[p][k];
        partial_[i][p] += c * w;
        if (c != 0 && partial_[i][p] + var_suffix_[p][k + 1] < floor) ok = false;
      }
      vecs_[i][k] = w;
      if (ok && dfs(k, i + 1)) return true;
      for (std::size_t p = 0; p < rays; ++p) partial_[i][p] -= cone_.rays[p][k] * w;
    }
    return false;
  }

  const Cone& cone_;
  IntVector a_;
  std::int64_t q_;
  int free_;
  int dim_;
  std::vector<IntVector> candidates_;
  std::vector<IntVector> var_suffix_;
  std::vector<IntVector> rem_suffix_;
  const std::vector<IntVector>* residues_ = nullptr;
  std::vector<IntVector> vecs_;
  std::vector<IntVector> partial_;
};

}  // namespace

IntVector primitive_generator(IntVector v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x);
  if (g == 0) throw PreconditionError("primitive_generator of the zero vector");
  for (auto& x : v) x /= g;
  return v;
}

Cone make_cone(int dimension, std::vector<IntVector> rays) {
  if (dimension < 0) throw ShapeError("negative cone dimension");
  std::set<IntVector> seen;
  for (const auto& r : rays) {
    if (static_cast<int>(r.size()) != dimension) throw ShapeError("ray length differs from cone dimension");
    if (primitive_generator(r) != r) throw PreconditionError("ray is not primitive");
    if (!seen.insert(r).second) throw PreconditionError("repeated ray");
  }
  return Cone{dimension, std::move(rays)};
}

bool in_open_anticanonical(const Cone& cone, std::span<const Rational> u) {
  if (static_cast<int>(u.size()) != cone.dimension) throw ShapeError("vector length differs from cone dimension");
  for (const auto& ray : cone.rays) {
    Rational dot = 0;
    for (int k = 0; k < cone.dimension; ++k) dot += u[k] * ray[k];
    if (!(dot > Rational(-1))) return false;
  }
  return true;
}

bool in_open_anticanonical_scaled(const Cone& cone, std::span<const std::int64_t> w, std::int64_t q) {
  if (static_cast<int>(w.size()) != cone.dimension) throw ShapeError("vector length differs from cone dimension");
  for (const auto& ray : cone.rays) {
    std::int64_t dot = 0;
    for (int k = 0; k < cone.dimension; ++k) dot += w[k] * ray[k];
    if (dot <= -q) return false;
  }
  return true;
}

bool in_closed_anticanonical_scaled(const Cone& cone, std::span<const std::int64_t> w, std::int64_t q) {
  if (static_cast<int>(w.size()) != cone.dimension) throw ShapeError("vector length differs from cone dimension");
  for (const auto& ray : cone.rays) {
    std::int64_t dot = 0;
    for (int k = 0; k < cone.dimension; ++k) dot += w[k] * ray[k];
    if (dot < -q) return false;
  }
  return true;
}

DnCheckResult check_pi_in_dn(const Cone& cone, const PiExponent& a, int n, int radius, bool keep_table,
                             int jobs) {
  if (static_cast<int>(a.numerators.size()) != cone.dimension) {
    throw ShapeError("exponent length differs from cone dimension");
  }
  if (a.q < 1) throw PreconditionError("q must be positive");
  if (n < 1) throw PreconditionError("n must be at least 1");
  if (radius < 1) throw PreconditionError("radius must be at least 1");
  if (!in_open_anticanonical_scaled(cone, a.numerators, a.q)) {
    throw PreconditionError("a is not strictly inside the anticanonical polytope");
  }
  const int free = n - 1;
  const auto count = detail::checked_pow(static_cast<std::uint64_t>(a.q),
                                         static_cast<std::uint64_t>(cone.dimension) * free);
  if (!count) throw PreconditionError("too many residue tuples to enumerate");

  DnCheckResult result;
  result.radius = radius;
  DnWitnessTable table;
  table.q = a.q;
  table.n = n;
  if (keep_table) table.rows.resize(*count);

  std::vector<std::unique_ptr<TranslateSearch>> searchers(std::max(jobs, 1));
  auto fails = [&](std::uint64_t index, int worker) {
    auto& search = searchers[worker];
    if (!search) search = std::make_unique<TranslateSearch>(cone, a, n, radius);
    auto residues = decode_tuple(index, free, cone.dimension, a.q);
    std::vector<IntVector> found;
    if (!search->run(residues, found)) return true;
    if (keep_table) {
      table.rows[index] = DnWitnessTable::Row{std::move(residues), std::move(found)};
    }
    return false;
  };
  auto failure = detail::least_failure(*count, jobs, fails);
  if (failure) {
    result.tuples_checked = *failure + 1;
    result.outcome = DnNoWitness{decode_tuple(*failure, free, cone.dimension, a.q), *failure};
  } else {
    result.tuples_checked = *count;
    result.outcome = DnMember{std::move(table)};
  }
  return result;
}

bool verify_dn_witness(const Cone& cone, const PiExponent& a, int n, int radius,
                       const DnWitnessTable& table, std::string* why) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  const int dim = cone.dimension;
  const auto count = detail::checked_pow(static_cast<std::uint64_t>(a.q),
                                         static_cast<std::uint64_t>(dim) * (n - 1));
  if (!count || table.rows.size() != *count) return fail("table does not cover every residue tuple");
  if (table.q != a.q || table.n != n) return fail("table level differs");
  for (std::uint64_t idx = 0; idx < *count; ++idx) {
    const auto& row = table.rows[idx];
    const std::string at = "tuple " + std::to_string(idx) + ": ";
    if (row.residues != decode_tuple(idx, n - 1, dim, a.q)) return fail(at + "residues out of order");
    if (static_cast<int>(row.vectors.size()) != n) return fail(at + "wrong number of vectors");
    std::vector<Rational> sum(dim, Rational(0));
    for (int i = 0; i < n; ++i) {
      const auto& v = row.vectors[i];
      if (static_cast<int>(v.size()) != dim) return fail(at + "vector length");
      std::vector<Rational> u(dim);
      for (int k = 0; k < dim; ++k) {
        u[k] = Rational(v[k], a.q);
        sum[k] += u[k];
        if (i < n - 1) {
          if ((v[k] - row.residues[i][k]) % a.q != 0) return fail(at + "translate not congruent");
          if (std::abs(v[k]) > static_cast<std::int64_t>(radius) * a.q) return fail(at + "translate outside radius");
        }
      }
      if (!in_open_anticanonical(cone, u)) return fail(at + "vector outside the open polytope");
    }
    for (int k = 0; k < dim; ++k) {
      if (sum[k] != Rational(a.numerators[k], a.q)) return fail(at + "vectors do not sum to a");
    }
  }
  return true;
}

}  // namespace hibi
