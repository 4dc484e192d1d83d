#include <algorithm>
#include <memory>

#include "hibi/certify.hpp"
#include "hibi/errors.hpp"

namespace hibi {

std::string to_string(ExtendedSolve::Route r) {
  switch (r) {
    case ExtendedSolve::Route::Greedy:
      return "greedy";
    case ExtendedSolve::Route::Exact:
      return "exact";
    case ExtendedSolve::Route::BaseInfeasible:
      return "base-infeasible";
    case ExtendedSolve::Route::Infeasible:
      return "infeasible";
  }
  return {};
}

std::string fresh_name(const Poset& poset, std::string stem) {
  if (!poset.find(stem)) return stem;
  for (int k = 1;; ++k) {
    std::string name = stem + std::to_string(k);
    if (!poset.find(name)) return name;
  }
}

ExtendedSolve solve_extended(const Poset& base, Index target, const AlphaMatrix& a) {
  if (target < 0 || target > base.size()) throw PreconditionError("unknown target index " + std::to_string(target));
  const int rows = base.index_count();
  if (a.entries.rows != rows + 1) {
    throw ShapeError("extended alpha needs " + std::to_string(rows + 1) + " rows");
  }
  const int n = a.entries.cols;
  ExtendedSolve out;
  out.extended = attach_node(base, target, fresh_name(base));
  const Index added = rows;

  Matrix restricted(rows, n);
  std::copy(a.entries.data.begin(), a.entries.data.begin() + static_cast<std::ptrdiff_t>(rows) * n,
            restricted.data.begin());
  auto base_solve = solve(base, AlphaMatrix{std::move(restricted), a.q});
  if (!base_solve.feasible()) {
    out.route = ExtendedSolve::Route::BaseInfeasible;
    out.provenance = "the restricted system on the base poset has no solution";
    return out;
  }

  const DeltaMatrix& bd = *base_solve.delta;
  std::int64_t remaining = 0;
  for (int m = 0; m < n; ++m) remaining += a.entries.at(added, m);
  remaining /= a.q;
  const std::int64_t needed = remaining;
  DeltaMatrix d(rows + 1, n);
  std::copy(bd.data.begin(), bd.data.end(), d.data.begin());
  bool greedy_ok = true;
  for (int m = 0; m < n; ++m) {
    const std::int64_t eps = a.entries.at(added, m) > a.entries.at(target, m) ? 1 : 0;
    const std::int64_t cap = eps + bd.at(target, m);
    if (cap < 0) {
      greedy_ok = false;
      break;
    }
    const std::int64_t take = std::min(cap, remaining);
    d.at(added, m) = take;
    remaining -= take;
  }
  if (greedy_ok && remaining == 0 && validate(out.extended, a, d).empty()) {
    out.route = ExtendedSolve::Route::Greedy;
    out.delta = std::move(d);
    out.provenance = "base solution extended greedily, N_new = " + std::to_string(needed);
    return out;
  }

  auto exact = solve(out.extended, a);
  out.delta = exact.delta;
  out.route = exact.feasible() ? ExtendedSolve::Route::Exact : ExtendedSolve::Route::Infeasible;
  out.provenance = exact.feasible() ? "greedy caps too small for the base solution; solved the extended system"
                                    : "extended system has no solution";
  return out;
}

namespace {

std::int64_t floor_of(const Rational& x) {
  const auto n = x.numerator();
  const auto d = x.denominator();
  return n >= 0 ? n / d : -((-n + d - 1) / d);
}

Rational frac_of(const Rational& x) { return x - floor_of(x); }

}  // namespace

std::vector<std::int64_t> fold_to_window(const std::vector<Rational>& x) {
  const std::int64_t k = static_cast<std::int64_t>(x.size());
  if (k == 0) return {};
  std::vector<Rational> pts;
  for (const auto& v : x) pts.push_back(frac_of(v));
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  // Largest arc between cyclically consecutive points; the wrap-around arc
  // runs from the last point to the first plus one.
  Rational best_gap = pts.front() + 1 - pts.back();
  Rational best_start = pts.back();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Rational gap = pts[i + 1] - pts[i];
    if (gap > best_gap) {
      best_gap = gap;
      best_start = pts[i];
    }
  }
  const Rational xi = frac_of(best_start + best_gap / 2);
  const Rational half = Rational(1, 2 * k);
  const Rational zeta = xi > 1 - half ? xi - 2 : xi - 1;

  std::vector<std::int64_t> t;
  for (const auto& v : x) {
    const Rational lifted = zeta + frac_of(v - zeta);
    const Rational diff = v - lifted;
    t.push_back(diff.numerator());
  }
  return t;
}

DeltaProvider solver_provider(const Poset& poset) {
  return [poset](const AlphaMatrix& a) { return solve(poset, a).delta; };
}

DeltaProvider verdict_provider(const Verdict& verdict) {
  auto table = std::make_shared<const std::map<std::string, DeltaMatrix>>(verdict.deltas);
  return [table](const AlphaMatrix& a) -> std::optional<DeltaMatrix> {
    auto it = table->find(alpha_digest(a));
    if (it == table->end()) return std::nullopt;
    return it->second;
  };
}

SplittingImage apply_splitting(const Poset& poset, const ZElement& z, std::int64_t q, const Matrix& lifts,
                               const DeltaProvider& provider) {
  if (lifts.rows != poset.index_count() || lifts.cols < 1) throw ShapeError("lift matrix shape");
  if (static_cast<int>(z.r.size()) != poset.index_count()) throw ShapeError("r length differs from poset");
  if (q < 2) throw PreconditionError("q must be at least 2");
  for (auto x : lifts.data) {
    if (x < 0) throw PreconditionError("lifts must be nonnegative");
  }
  SplittingImage img;
  for (int i = 0; i < lifts.rows; ++i) {
    std::int64_t s = 0;
    for (auto x : lifts.row(i)) s += x;
    if (((s - z.r[i]) % q + q) % q != 0) {
      img.zero = true;
      return img;
    }
  }
  Matrix residues(lifts.rows, lifts.cols);
  for (std::size_t k = 0; k < lifts.data.size(); ++k) residues.data[k] = lifts.data[k] % q;
  AlphaMatrix alpha{std::move(residues), q};
  auto delta = provider(alpha);
  if (!delta) throw MissingDeltaError("no delta for residue matrix " + alpha_digest(alpha));
  if (delta->rows != lifts.rows || delta->cols != lifts.cols) throw ShapeError("provided delta has the wrong shape");
  img.exponents = Matrix(lifts.rows, lifts.cols);
  for (std::size_t k = 0; k < lifts.data.size(); ++k) img.exponents.data[k] = lifts.data[k] / q + delta->data[k];
  return img;
}

Poset diamond_poset() { return Poset({"v1", "v2", "v3", "v4"}, {{1, 3}, {1, 4}, {2, 3}, {2, 4}}); }

TheoremCReport reproduce_theorem_c(std::int64_t q) {
  if (q <= 2) throw PreconditionError("the diamond family needs q > 2");
  TheoremCReport rep;
  rep.diamond = diamond_poset();
  rep.z = z_element(rep.diamond, ZStrategy::LongestPath);
  rep.alpha = make_alpha(Matrix::from_rows({{0, 2, 0}, {0, 0, 1}, {q - 1, 2, 0}, {0, 0, 0}, {0, 2, q - 2}}), q);
  rep.congruent = rows_congruent(rep.alpha, rep.z.r);
  rep.table = epsilon_and_n(rep.diamond, rep.alpha);
  rep.box = delta_search_box(rep.diamond, rep.alpha);
  rep.solve = solve(rep.diamond, rep.alpha, SolveOptions{true, 0});
  return rep;
}

}  // namespace hibi
