#include "hibi/certify.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <memory>

#include <absl/container/flat_hash_map.h>

#include "hibi/detail/ordered_search.hpp"
#include "hibi/digest.hpp"
#include "hibi/errors.hpp"

namespace hibi {

AlphaSpace::AlphaSpace(Poset poset, ZElement z, std::int64_t q, int n)
    : poset_(std::move(poset)), z_(std::move(z)), q_(q), n_(n) {
  if (n_ < 1) throw PreconditionError("n must be at least 1");
  if (static_cast<int>(z_.r.size()) != poset_.index_count()) throw ShapeError("r length differs from poset");
  if (q_ < 2 || q_ <= z_.max_exponent()) {
    throw PreconditionError("q = " + std::to_string(q_) + " must exceed every exponent of z (max " +
                            std::to_string(z_.max_exponent()) + ")");
  }
  auto per_row = detail::checked_pow(static_cast<std::uint64_t>(q_), static_cast<std::uint64_t>(n_ - 1));
  auto total = per_row ? detail::checked_pow(*per_row, static_cast<std::uint64_t>(rows())) : std::nullopt;
  if (!total) throw PreconditionError("alpha space too large to enumerate");
  row_choices_ = *per_row;
  size_ = *total;
}

void AlphaSpace::row_values(int row, std::uint64_t choice, std::int64_t* out) const {
  std::int64_t sum = 0;
  for (int m = n_ - 2; m >= 0; --m) {
    out[m] = static_cast<std::int64_t>(choice % static_cast<std::uint64_t>(q_));
    choice /= static_cast<std::uint64_t>(q_);
    sum += out[m];
  }
  out[n_ - 1] = ((z_.r[row] - sum) % q_ + q_) % q_;
}

AlphaMatrix AlphaSpace::at(std::uint64_t index) const {
  if (index >= size_) throw PreconditionError("alpha index out of range");
  Matrix m(rows(), n_);
  for (int i = rows() - 1; i >= 0; --i) {
    row_values(i, index % row_choices_, &m.at(i, 0));
    index /= row_choices_;
  }
  return AlphaMatrix{std::move(m), q_};
}

std::uint64_t AlphaSpace::index_of(const AlphaMatrix& a) const {
  if (a.q != q_ || a.entries.rows != rows() || a.entries.cols != n_) {
    throw PreconditionError("matrix shape or level differs from the alpha space");
  }
  std::uint64_t index = 0;
  std::vector<std::int64_t> vals(n_);
  for (int i = 0; i < rows(); ++i) {
    std::uint64_t c = 0;
    for (int m = 0; m + 1 < n_; ++m) {
      const auto x = a.entries.at(i, m);
      if (x < 0 || x >= q_) throw PreconditionError("alpha entry outside [0, q-1]");
      c = c * static_cast<std::uint64_t>(q_) + static_cast<std::uint64_t>(x);
    }
    row_values(i, c, vals.data());
    if (vals[n_ - 1] != a.entries.at(i, n_ - 1)) throw PreconditionError("row sum off the congruence class of r");
    index = index * row_choices_ + c;
  }
  return index;
}

AlphaSpace alpha_space(const Poset& poset, const ZElement& z, std::int64_t q, int n) {
  return AlphaSpace(poset, z, q, n);
}

std::string to_string(VerdictKind k) { return k == VerdictKind::Certificate ? "Certificate" : "Refutation"; }

std::string alpha_digest(const AlphaMatrix& a) {
  std::string text = std::to_string(a.q);
  for (int i = 0; i < a.entries.rows; ++i) {
    text += ";";
    for (int m = 0; m < a.entries.cols; ++m) text += (m ? "," : "") + std::to_string(a.entries.at(i, m));
  }
  return sha256_hex(text);
}

bool is_prime_power(std::int64_t q) {
  if (q < 2) return false;
  for (std::int64_t p = 2; p * p <= q; ++p) {
    if (q % p == 0) {
      while (q % p == 0) q /= p;
      return q == 1;
    }
  }
  return true;
}

std::int64_t smallest_admissible_q(const ZElement& z) { return std::max<std::int64_t>(2, z.max_exponent() + 1); }

namespace {

using Key = std::array<std::uint64_t, 4>;
constexpr int kKeyBits = 256;
constexpr std::size_t kMemoCap = std::size_t{1} << 23;

int bit_width_for(std::uint64_t max_value) { return max_value == 0 ? 0 : std::bit_width(max_value); }

void put_bits(Key& k, int offset, std::uint64_t value, int width) {
  if (width == 0) return;
  const int w = offset >> 6;
  const int b = offset & 63;
  k[w] |= value << b;
  if (b + width > 64) k[w + 1] |= value >> (64 - b);
}

// Static description of the row-by-row search: which covers complete at
// each row, where their eps bits live in the key, and which earlier rows
// must still be remembered.
struct Layout {
  int rows = 0;
  int n = 0;
  std::uint64_t choices = 0;
  std::vector<std::int64_t> vals;  // [row][choice][m]
  std::vector<std::uint64_t> nval;  // [row][choice]
  int n_width = 0;
  int frontier_width = 0;
  int sig_bits = 0;
  int total_bits = 0;
  struct LevelCover {
    int other = 0;
    int offset = 0;
    std::vector<std::uint16_t> mask;  // [mine * choices + other]
  };
  std::vector<std::vector<LevelCover>> level_covers;
  std::vector<int> n_offset;
  std::vector<std::vector<int>> frontier;  // after processing rows 0..i

  explicit Layout(const AlphaSpace& s) : rows(s.rows()), n(s.n()), choices(s.row_choices()) {
    const auto& p = s.poset();
    vals.resize(static_cast<std::size_t>(rows) * choices * n);
    nval.resize(static_cast<std::size_t>(rows) * choices);
    for (int i = 0; i < rows; ++i) {
      for (std::uint64_t c = 0; c < choices; ++c) {
        std::int64_t* v = &vals[(i * choices + c) * n];
        s.row_values(i, c, v);
        std::int64_t sum = 0;
        for (int m = 0; m < n; ++m) sum += v[m];
        nval[i * choices + c] = static_cast<std::uint64_t>(sum / s.q());
      }
    }
    n_width = bit_width_for(static_cast<std::uint64_t>(n - 1));
    frontier_width = bit_width_for(choices - 1);
    level_covers.resize(rows);
    n_offset.resize(rows);
    int off = 0;
    for (int i = 0; i < rows; ++i) {
      n_offset[i] = off;
      off += n_width;
      for (const Cover& c : p.covers()) {
        if (std::max(c.lower, c.upper) != i) continue;
        LevelCover lc;
        lc.other = c.lower == i ? c.upper : c.lower;
        lc.offset = off;
        off += n;
        lc.mask.resize(choices * choices);
        for (std::uint64_t mine = 0; mine < choices; ++mine) {
          for (std::uint64_t oth = 0; oth < choices; ++oth) {
            const std::int64_t* vm = &vals[(i * choices + mine) * n];
            const std::int64_t* vo = &vals[(lc.other * choices + oth) * n];
            const std::int64_t* up = c.upper == i ? vm : vo;
            const std::int64_t* lo = c.upper == i ? vo : vm;
            std::uint16_t bits = 0;
            for (int m = 0; m < n; ++m) {
              if (up[m] > lo[m]) bits |= static_cast<std::uint16_t>(1u << m);
            }
            lc.mask[mine * choices + oth] = bits;
          }
        }
        level_covers[i].push_back(std::move(lc));
      }
    }
    sig_bits = off;
    std::size_t widest = 0;
    frontier.resize(rows);
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j <= i; ++j) {
        bool needed = false;
        for (const Cover& c : p.covers()) {
          if ((c.lower == j && c.upper > i) || (c.upper == j && c.lower > i)) needed = true;
        }
        if (needed) frontier[i].push_back(j);
      }
      widest = std::max(widest, frontier[i].size());
    }
    total_bits = sig_bits + static_cast<int>(widest) * frontier_width;
  }

  bool fits() const { return n <= 16 && total_bits <= kKeyBits; }
};

class FastEngine {
 public:
  FastEngine(const AlphaSpace& space, const Layout& layout)
      : space_(space), lay_(layout), path_(layout.rows, 0), memo_(layout.rows) {}

  bool bad_from(std::uint64_t c0) {
    path_[0] = c0;
    return bad(1, advance(0, Key{}, c0));
  }

  std::vector<std::uint64_t> least_witness(std::uint64_t c0) {
    path_[0] = c0;
    Key sig = advance(0, Key{}, c0);
    for (int i = 1; i < lay_.rows; ++i) {
      bool found = false;
      for (std::uint64_t c = 0; c < lay_.choices && !found; ++c) {
        path_[i] = c;
        Key next = advance(i, sig, c);
        if (bad(i + 1, next)) {
          sig = next;
          found = true;
        }
      }
      if (!found) throw Error("internal: lost the refuting branch");
    }
    return path_;
  }

  std::uint64_t solved() const { return solved_; }

 private:
  Key advance(int i, const Key& sig, std::uint64_t c) const {
    Key k = sig;
    put_bits(k, lay_.n_offset[i], lay_.nval[i * lay_.choices + c], lay_.n_width);
    for (const auto& lc : lay_.level_covers[i]) {
      put_bits(k, lc.offset, lc.mask[c * lay_.choices + path_[lc.other]], lay_.n);
    }
    return k;
  }

  bool bad(int i, const Key& sig) {
    if (i == lay_.rows) return infeasible(sig);
    Key mk = sig;
    const auto& f = lay_.frontier[i - 1];
    for (std::size_t s = 0; s < f.size(); ++s) {
      put_bits(mk, lay_.sig_bits + static_cast<int>(s) * lay_.frontier_width, path_[f[s]], lay_.frontier_width);
    }
    auto& memo = memo_[i];
    if (auto it = memo.find(mk); it != memo.end()) return it->second;
    bool result = false;
    for (std::uint64_t c = 0; c < lay_.choices; ++c) {
      path_[i] = c;
      if (bad(i + 1, advance(i, sig, c))) {
        result = true;
        break;
      }
    }
    if (memo_size_ < kMemoCap) {
      memo.emplace(mk, result);
      ++memo_size_;
    }
    return result;
  }

  bool infeasible(const Key& sig) {
    if (auto it = verdicts_.find(sig); it != verdicts_.end()) return it->second;
    Matrix m(lay_.rows, lay_.n);
    for (int i = 0; i < lay_.rows; ++i) {
      const std::int64_t* v = &lay_.vals[(i * lay_.choices + path_[i]) * lay_.n];
      std::copy(v, v + lay_.n, &m.at(i, 0));
    }
    const bool bad = !solve_problem(make_problem(space_.poset(), AlphaMatrix{std::move(m), space_.q()})).feasible();
    ++solved_;
    verdicts_.emplace(sig, bad);
    return bad;
  }

  const AlphaSpace& space_;
  const Layout& lay_;
  std::vector<std::uint64_t> path_;
  std::vector<absl::flat_hash_map<Key, bool>> memo_;
  std::size_t memo_size_ = 0;
  absl::flat_hash_map<Key, bool> verdicts_;
  std::uint64_t solved_ = 0;
};

std::vector<std::int64_t> signature(const Poset& p, const AlphaMatrix& a) {
  const auto t = epsilon_and_n(p, a);
  std::vector<std::int64_t> sig = t.n;
  for (const auto& e : t.eps) sig.insert(sig.end(), e.begin(), e.end());
  return sig;
}

void certify_reference(const AlphaSpace& space, bool store, Verdict& v) {
  std::map<std::vector<std::int64_t>, std::optional<DeltaMatrix>> cache;
  for (std::uint64_t idx = 0; idx < space.size(); ++idx) {
    AlphaMatrix a = space.at(idx);
    auto sig = signature(space.poset(), a);
    auto it = cache.find(sig);
    if (it == cache.end()) {
      it = cache.emplace(std::move(sig), solve(space.poset(), a).delta).first;
      ++v.systems_solved;
    }
    if (!it->second) {
      v.kind = VerdictKind::Refutation;
      v.checked_count = idx + 1;
      v.witness_index = idx;
      v.witness = std::move(a);
      v.deltas.clear();
      v.deltas_stored = false;
      return;
    }
    if (store) v.deltas.emplace(alpha_digest(a), *it->second);
  }
  v.kind = VerdictKind::Certificate;
  v.checked_count = space.size();
  v.deltas_stored = store;
}

}  // namespace

Verdict certify(const Poset& poset, int n, std::int64_t q, const CertifyOptions& options) {
  const ZElement z = z_element(poset, options.strategy);
  const AlphaSpace space(poset, z, q, n);
  Verdict v;
  v.poset_digest = poset.digest();
  v.n = n;
  v.q = q;
  v.z = z;
  v.total = space.size();

  bool store = options.store_deltas == StoreDeltas::On;
  if (options.store_deltas == StoreDeltas::Auto) store = space.rows() <= 5 && n <= 2;

  const Layout layout(space);
  if (store || options.reference || !layout.fits()) {
    certify_reference(space, store, v);
    return v;
  }

  const int jobs = std::max(1, options.jobs);
  std::vector<std::unique_ptr<FastEngine>> engines(jobs);
  auto engine = [&](int slot) -> FastEngine& {
    if (!engines[slot]) engines[slot] = std::make_unique<FastEngine>(space, layout);
    return *engines[slot];
  };
  auto failing = detail::least_failure(space.row_choices(), jobs,
                                       [&](std::uint64_t c0, int slot) { return engine(slot).bad_from(c0); });
  if (failing) {
    const auto path = engine(0).least_witness(*failing);
    std::uint64_t idx = 0;
    for (auto c : path) idx = idx * space.row_choices() + c;
    v.kind = VerdictKind::Refutation;
    v.witness_index = idx;
    v.witness = space.at(idx);
    v.checked_count = idx + 1;
  } else {
    v.kind = VerdictKind::Certificate;
    v.checked_count = space.size();
  }
  for (const auto& e : engines) {
    if (e) v.systems_solved += e->solved();
  }
  return v;
}

}  // namespace hibi
