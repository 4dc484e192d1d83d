#include "hibi/delta.hpp"

#include <algorithm>

#include "hibi/errors.hpp"
#include "hibi/hibi_ring.hpp"

namespace hibi {

Matrix::Matrix(int r, int c, std::int64_t fill)
    : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, fill) {}

Matrix Matrix::from_rows(const std::vector<std::vector<std::int64_t>>& rs) {
  Matrix m(static_cast<int>(rs.size()), rs.empty() ? 0 : static_cast<int>(rs.front().size()));
  for (int i = 0; i < m.rows; ++i) {
    if (static_cast<int>(rs[i].size()) != m.cols) throw ShapeError("ragged matrix rows");
    std::copy(rs[i].begin(), rs[i].end(), m.data.begin() + static_cast<std::ptrdiff_t>(i) * m.cols);
  }
  return m;
}

std::vector<std::vector<std::int64_t>> Matrix::to_rows() const {
  std::vector<std::vector<std::int64_t>> out;
  for (int i = 0; i < rows; ++i) out.emplace_back(row(i).begin(), row(i).end());
  return out;
}

AlphaMatrix make_alpha(Matrix entries, std::int64_t q) {
  if (q < 2) throw PreconditionError("q must be at least 2");
  for (auto x : entries.data) {
    if (x < 0 || x >= q) throw PreconditionError("alpha entry " + std::to_string(x) + " outside [0, q-1]");
  }
  return AlphaMatrix{std::move(entries), q};
}

bool rows_congruent(const AlphaMatrix& a, std::span<const std::int64_t> r) {
  if (static_cast<int>(r.size()) != a.entries.rows) throw ShapeError("r length differs from alpha rows");
  for (int i = 0; i < a.entries.rows; ++i) {
    std::int64_t s = 0;
    for (auto x : a.entries.row(i)) s += x;
    if (((s - r[i]) % a.q + a.q) % a.q != 0) return false;
  }
  return true;
}

namespace {

void check_shape(const Poset& p, const AlphaMatrix& a) {
  if (a.entries.rows != p.index_count() || a.entries.cols < 1) {
    throw ShapeError("alpha is " + std::to_string(a.entries.rows) + "x" + std::to_string(a.entries.cols) +
                     ", poset needs " + std::to_string(p.index_count()) + " rows");
  }
  for (auto x : a.entries.data) {
    if (x < 0 || x >= a.q) throw PreconditionError("alpha entry outside [0, q-1]");
  }
}

std::string entry_name(const DeltaProblem& p, int i, int m) {
  const std::string row = i < static_cast<int>(p.row_names.size()) ? p.row_names[i] : std::to_string(i);
  return "delta[" + row + "," + std::to_string(m + 1) + "]";
}

class Search {
 public:
  Search(const DeltaProblem& p, bool trace) : p_(p), tracing_(trace) {}

  SolveResult run() {
    auto lo = p_.lo;
    auto hi = p_.hi;
    depth_log_ = tracing_;
    if (propagate(lo, hi)) {
      if (tracing_) log_forced(lo, hi);
      depth_log_ = false;
      dfs(lo, hi);
    }
    result_.nodes = nodes_;
    return std::move(result_);
  }

 private:
  void note(std::string line) {
    if (!tracing_) return;
    if (result_.trace.size() < kMaxTrace) {
      result_.trace.push_back(std::move(line));
    } else if (result_.trace.size() == kMaxTrace) {
      result_.trace.push_back("... trace truncated");
    }
  }

  void log_forced(const std::vector<std::int64_t>& lo, const std::vector<std::int64_t>& hi) {
    for (int i = 0; i < p_.rows; ++i) {
      bool fixed = true;
      std::string vals;
      for (int m = 0; m < p_.cols; ++m) {
        const auto k = idx(i, m);
        if (lo[k] != hi[k]) fixed = false;
        vals += (m ? "," : "") + std::to_string(lo[k]);
      }
      if (fixed) {
        note("forced " + (i < static_cast<int>(p_.row_names.size()) ? p_.row_names[i] : std::to_string(i)) +
             " = (" + vals + ")");
      }
    }
  }

  std::size_t idx(int i, int m) const { return static_cast<std::size_t>(i) * p_.cols + m; }

  // Tightens to a fixpoint; false on an empty interval.
  bool propagate(std::vector<std::int64_t>& lo, std::vector<std::int64_t>& hi) {
    for (std::size_t k = 0; k < lo.size(); ++k) {
      if (lo[k] > hi[k]) {
        if (depth_log_) note(entry_name(p_, static_cast<int>(k) / p_.cols, static_cast<int>(k) % p_.cols) +
                             " has an empty initial range");
        return false;
      }
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& e : p_.edges) {
        for (int m = 0; m < p_.cols; ++m) {
          const auto u = idx(e.upper, m);
          const auto l = idx(e.lower, m);
          if (hi[u] > e.eps[m] + hi[l]) {
            hi[u] = e.eps[m] + hi[l];
            changed = true;
            if (depth_log_) note(entry_name(p_, e.upper, m) + " <= " + std::to_string(hi[u]) + " via cover " +
                                 row_name(e.lower) + "<" + row_name(e.upper));
          }
          if (lo[l] < lo[u] - e.eps[m]) {
            lo[l] = lo[u] - e.eps[m];
            changed = true;
            if (depth_log_) note(entry_name(p_, e.lower, m) + " >= " + std::to_string(lo[l]) + " via cover " +
                                 row_name(e.lower) + "<" + row_name(e.upper));
          }
          if (lo[u] > hi[u] || lo[l] > hi[l]) {
            const int bad = lo[u] > hi[u] ? e.upper : e.lower;
            const auto k = idx(bad, m);
            if (tracing_) note("contradiction: " + entry_name(p_, bad, m) + " in [" + std::to_string(lo[k]) + "," +
                 std::to_string(hi[k]) + "] at cover " + row_name(e.lower) + "<" + row_name(e.upper));
            return false;
          }
        }
      }
      for (int i = 0; i < p_.rows; ++i) {
        std::int64_t slo = 0, shi = 0;
        for (int m = 0; m < p_.cols; ++m) {
          slo += lo[idx(i, m)];
          shi += hi[idx(i, m)];
        }
        const std::int64_t n = p_.sums[i];
        if (slo > n || shi < n) {
          if (tracing_) note("contradiction: row " + row_name(i) + " needs sum " + std::to_string(n) + " but ranges give [" +
               std::to_string(slo) + "," + std::to_string(shi) + "]");
          return false;
        }
        for (int m = 0; m < p_.cols; ++m) {
          const auto k = idx(i, m);
          const std::int64_t nh = n - (slo - lo[k]);
          const std::int64_t nl = n - (shi - hi[k]);
          if (nh < hi[k]) {
            shi -= hi[k] - nh;
            hi[k] = nh;
            changed = true;
            if (depth_log_) note(entry_name(p_, i, m) + " <= " + std::to_string(nh) + " via row sum");
          }
          if (nl > lo[k]) {
            slo += nl - lo[k];
            lo[k] = nl;
            changed = true;
            if (depth_log_) note(entry_name(p_, i, m) + " >= " + std::to_string(nl) + " via row sum");
          }
        }
      }
    }
    return true;
  }

  std::string row_name(int i) const {
    return i < static_cast<int>(p_.row_names.size()) ? p_.row_names[i] : std::to_string(i);
  }

  bool dfs(std::vector<std::int64_t>& lo, std::vector<std::int64_t>& hi) {
    ++nodes_;
    std::size_t k = 0;
    while (k < lo.size() && lo[k] == hi[k]) ++k;
    if (k == lo.size()) {
      DeltaMatrix d(p_.rows, p_.cols);
      d.data = lo;
      result_.delta = std::move(d);
      return true;
    }
    for (std::int64_t v = lo[k]; v <= hi[k]; ++v) {
      auto l2 = lo;
      auto h2 = hi;
      l2[k] = h2[k] = v;
      if (propagate(l2, h2) && dfs(l2, h2)) return true;
    }
    return false;
  }

  static constexpr std::size_t kMaxTrace = 200;
  const DeltaProblem& p_;
  bool tracing_;
  bool depth_log_ = false;
  std::uint64_t nodes_ = 0;
  SolveResult result_;
};

}  // namespace

EpsilonTable epsilon_and_n(const Poset& poset, const AlphaMatrix& a) {
  check_shape(poset, a);
  EpsilonTable t;
  t.covers = poset.covers();
  const int n = a.entries.cols;
  for (const Cover& c : t.covers) {
    std::vector<std::int64_t> e(n);
    for (int m = 0; m < n; ++m) e[m] = a.entries.at(c.upper, m) > a.entries.at(c.lower, m) ? 1 : 0;
    t.eps.push_back(std::move(e));
  }
  for (int i = 0; i < a.entries.rows; ++i) {
    std::int64_t s = 0;
    for (auto x : a.entries.row(i)) s += x;
    t.n.push_back(s / a.q);
  }
  return t;
}

SearchBox delta_search_box(const Poset& poset, const AlphaMatrix& a) {
  check_shape(poset, a);
  const auto t = epsilon_and_n(poset, a);
  const auto dist = shortest_up_paths(poset);
  const std::int64_t n = a.entries.cols;
  SearchBox box;
  for (Index i = 0; i < poset.index_count(); ++i) {
    const std::int64_t lo = -static_cast<std::int64_t>(dist[i]);
    box.lower.push_back(lo);
    box.upper.push_back(t.n[i] - (n - 1) * lo);
  }
  return box;
}

DeltaProblem make_problem(const Poset& poset, const AlphaMatrix& a, int widen) {
  const auto t = epsilon_and_n(poset, a);
  const auto box = delta_search_box(poset, a);
  DeltaProblem p;
  p.rows = poset.index_count();
  p.cols = a.entries.cols;
  for (int i = 0; i < p.rows; ++i) {
    const std::int64_t floor = poset.is_maximal(i) ? 0 : box.lower[i] - widen;
    for (int m = 0; m < p.cols; ++m) {
      p.lo.push_back(floor);
      p.hi.push_back(box.upper[i] + widen);
    }
    p.row_names.push_back(poset.name(i));
  }
  p.sums = t.n;
  for (std::size_t c = 0; c < t.covers.size(); ++c) {
    p.edges.push_back({t.covers[c].lower, t.covers[c].upper, t.eps[c]});
  }
  return p;
}

SolveResult solve_problem(const DeltaProblem& problem, bool trace) {
  return Search(problem, trace).run();
}

SolveResult solve(const Poset& poset, const AlphaMatrix& a, SolveOptions options) {
  auto result = solve_problem(make_problem(poset, a, options.widen), options.trace);
  if (result.delta && !validate(poset, a, *result.delta).empty()) {
    throw Error("internal: solver returned an invalid delta");
  }
  return result;
}

std::vector<Violation> validate(const Poset& poset, const AlphaMatrix& a, const DeltaMatrix& d) {
  check_shape(poset, a);
  if (d.rows != a.entries.rows || d.cols != a.entries.cols) throw ShapeError("delta shape differs from alpha");
  const auto t = epsilon_and_n(poset, a);
  std::vector<Violation> out;
  const int n = d.cols;
  for (Index i = 0; i < poset.index_count(); ++i) {
    if (!poset.is_maximal(i)) continue;
    for (int m = 0; m < n; ++m) {
      if (d.at(i, m) < 0) {
        out.push_back({'a', i, i, m,
                       "(a) delta[" + poset.name(i) + "," + std::to_string(m + 1) + "] = " +
                           std::to_string(d.at(i, m)) + " < 0 on a maximal element"});
      }
    }
  }
  for (std::size_t c = 0; c < t.covers.size(); ++c) {
    const auto [lo, up] = t.covers[c];
    for (int m = 0; m < n; ++m) {
      if (d.at(up, m) > t.eps[c][m] + d.at(lo, m)) {
        out.push_back({'b', up, lo, m,
                       "(b) cover (" + poset.name(lo) + "," + poset.name(up) + ") m=" + std::to_string(m + 1) +
                           ": " + std::to_string(d.at(up, m)) + " > " + std::to_string(t.eps[c][m]) + " + " +
                           std::to_string(d.at(lo, m))});
      }
    }
  }
  for (Index i = 0; i < poset.index_count(); ++i) {
    std::int64_t s = 0;
    for (auto x : d.row(i)) s += x;
    if (s != t.n[i]) {
      out.push_back({'c', i, i, -1,
                     "(c) row " + poset.name(i) + " sums to " + std::to_string(s) + ", N = " +
                         std::to_string(t.n[i])});
    }
  }
  return out;
}

}  // namespace hibi
