#include <doctest.h>

#include "hibi/certify.hpp"
#include "hibi/classify.hpp"
#include "hibi/corpus.hpp"
#include "hibi/errors.hpp"
#include "oracles.hpp"

using namespace hibi;

TEST_CASE("alpha space sizes and order") {
  const Poset one = make_chain(1);
  CHECK(alpha_space(one, z_element(one), 2, 2).size() == 4);
  const Poset d = builtin_poset("diamond");
  const auto s = alpha_space(d, z_element(d), 3, 2);
  CHECK(s.size() == 243);
  const auto s1 = alpha_space(d, z_element(d), 3, 1);
  REQUIRE(s1.size() == 1);
  CHECK(s1.at(0).entries.data == std::vector<std::int64_t>{2, 1, 1, 0, 0});
  CHECK_THROWS_AS(alpha_space(d, z_element(d), 2, 2), PreconditionError);
  CHECK_THROWS_AS(alpha_space(d, z_element(d), 3, 0), PreconditionError);

  const auto s3 = alpha_space(d, z_element(d), 3, 3);
  const auto r = z_element(d).r;
  std::vector<std::int64_t> prev;
  for (std::uint64_t i = 0; i < s3.size(); i += 7) {
    const auto a = s3.at(i);
    CHECK(s3.index_of(a) == i);
    CHECK(rows_congruent(a, r));
    CHECK(prev < a.entries.data);
    prev = a.entries.data;
  }
}

TEST_CASE("alpha space enumerates exactly the congruent matrices") {
  const Poset p = builtin_poset("join-2");
  const auto z = z_element(p);
  const std::int64_t q = 3;
  const auto s = alpha_space(p, z, q, 2);
  std::set<std::vector<std::int64_t>> seen;
  s.for_each([&](std::uint64_t, const AlphaMatrix& a) { seen.insert(a.entries.data); });
  std::uint64_t brute = 0;
  const int cells = p.index_count() * 2;
  std::vector<std::int64_t> v(cells, 0);
  for (std::uint64_t code = 0; code < 6561; ++code) {
    std::uint64_t c = code;
    for (int k = cells - 1; k >= 0; --k, c /= 3) v[k] = static_cast<std::int64_t>(c % 3);
    AlphaMatrix a{Matrix(p.index_count(), 2), q};
    a.entries.data = v;
    if (rows_congruent(a, z.r)) {
      ++brute;
      CHECK(seen.count(v) == 1);
    }
  }
  CHECK(brute == s.size());
  CHECK(seen.size() == s.size());
}

TEST_CASE("certify the named examples") {
  const Poset d = builtin_poset("diamond");
  const auto two = certify(d, 2, 3);
  CHECK(two.kind == VerdictKind::Certificate);
  CHECK(two.checked_count == 243);
  CHECK(two.total == 243);

  const auto three = certify(d, 3, 3);
  CHECK(three.kind == VerdictKind::Refutation);
  REQUIRE(three.witness);
  CHECK_FALSE(solve(d, *three.witness).feasible());
  CHECK(three.checked_count == *three.witness_index + 1);
  const auto space = alpha_space(d, z_element(d), 3, 3);
  for (std::uint64_t i = 0; i < *three.witness_index; ++i) CHECK(solve(d, space.at(i)).feasible());

  CHECK(certify(make_chain(3), 3, 5).kind == VerdictKind::Certificate);
  CHECK_THROWS_AS(certify(d, 3, 2), PreconditionError);
}

TEST_CASE("fast and reference engines agree") {
  std::mt19937_64 rng(51);
  std::vector<std::pair<Poset, std::string>> cases;
  for (const auto& en : builtin_corpus()) cases.push_back({parse_poset(en.text), en.name});
  for (int t = 0; t < 40; ++t) cases.push_back({oracle::random_poset(rng, 1 + static_cast<int>(rng() % 4)), "random"});
  for (const auto& [p, name] : cases) {
    for (int n : {2, 3}) {
      const std::int64_t q = smallest_admissible_q(z_element(p));
      const double size = std::pow(static_cast<double>(q), p.index_count() * (n - 1.0));
      if (size > 60000) continue;
      CertifyOptions fast;
      fast.store_deltas = StoreDeltas::Off;
      CertifyOptions ref = fast;
      ref.reference = true;
      const auto a = certify(p, n, q, fast);
      const auto b = certify(p, n, q, ref);
      CHECK_MESSAGE(a.kind == b.kind, name);
      CHECK(a.witness_index == b.witness_index);
      CHECK(a.checked_count == b.checked_count);
    }
  }
}

TEST_CASE("parallel certification is deterministic") {
  const Poset d = builtin_poset("diamond");
  CertifyOptions o;
  o.jobs = 3;
  const auto many = certify(d, 3, 3, o);
  const auto one = certify(d, 3, 3);
  CHECK(many.witness_index == one.witness_index);
  CHECK(many.witness == one.witness);
}

TEST_CASE("stored deltas validate") {
  const Poset d = builtin_poset("diamond");
  const auto v = certify(d, 2, 3);
  REQUIRE(v.deltas_stored);
  CHECK(v.deltas.size() == 243);
  const auto space = alpha_space(d, v.z, 3, 2);
  std::mt19937_64 rng(7);
  for (int k = 0; k < 100; ++k) {
    const auto a = space.at(rng() % space.size());
    CHECK(solve(d, a).feasible());
    const auto it = v.deltas.find(alpha_digest(a));
    REQUIRE(it != v.deltas.end());
    CHECK(validate(d, a, it->second).empty());
  }
  CertifyOptions off;
  off.store_deltas = StoreDeltas::Off;
  CHECK_FALSE(certify(d, 2, 3, off).deltas_stored);
}

TEST_CASE("prime powers") {
  std::vector<std::int64_t> got;
  for (std::int64_t q = 0; q <= 30; ++q)
    if (is_prime_power(q)) got.push_back(q);
  CHECK(got == std::vector<std::int64_t>{2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29});
}

TEST_CASE("two factors certify on small corpus posets") {
  for (const auto& en : builtin_corpus()) {
    const Poset p = parse_poset(en.text);
    if (p.size() > 6) continue;
    const auto m = z_element(p).max_exponent();
    for (std::int64_t q = m + 1; q <= m + 3; ++q) {
      if (q > 9 || !is_prime_power(q)) continue;
      CHECK_MESSAGE(certify(p, 2, q).kind == VerdictKind::Certificate, en.name << " q=" << q);
    }
  }
}

TEST_CASE("covered posets certify at three factors") {
  for (const auto& en : builtin_corpus()) {
    const Poset p = parse_poset(en.text);
    const auto q = smallest_admissible_q(z_element(p));
    if (std::pow(static_cast<double>(q), 2.0 * p.index_count()) > 1e13) continue;
    const auto v = certify(p, 3, q);
    if (classify_top_nodes(p).verdict == Coverage::Covered) {
      CHECK_MESSAGE(v.kind == VerdictKind::Certificate, en.name);
    }
    if (en.name == "diamond") CHECK(v.kind == VerdictKind::Refutation);
  }
}

TEST_CASE("solve_extended examples") {
  const Poset chain = make_chain(2, "v");
  const auto zero = make_alpha(Matrix(4, 2), 3);
  const auto r0 = solve_extended(chain, 2, zero);
  REQUIRE(r0.feasible());
  CHECK(r0.delta->row(3)[0] == 0);
  CHECK(r0.delta->row(3)[1] == 0);

  const auto a = make_alpha(Matrix::from_rows({{0, 0}, {0, 0}, {1, 1}, {2, 1}}), 3);
  const auto r1 = solve_extended(chain, 2, a);
  REQUIRE(r1.feasible());
  CHECK(r1.route == ExtendedSolve::Route::Greedy);
  CHECK(r1.delta->to_rows()[3] == std::vector<std::int64_t>{1, 0});
  CHECK(r1.delta->to_rows()[2] == std::vector<std::int64_t>{0, 0});
  CHECK(validate(r1.extended, a, *r1.delta).empty());

  CHECK_THROWS_AS(solve_extended(chain, 5, a), PreconditionError);
  CHECK_THROWS_AS(solve_extended(chain, 1, make_alpha(Matrix(3, 2), 3)), ShapeError);
}

TEST_CASE("solve_extended matches the extended system on random residues") {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 300; ++t) {
    const Poset p = oracle::random_poset(rng, 1 + static_cast<int>(rng() % 4));
    const Index target = static_cast<Index>(rng() % (p.size() + 1));
    const int n = 2 + static_cast<int>(rng() % 2);
    const std::int64_t q = 2 + static_cast<std::int64_t>(rng() % 3);
    const auto a = oracle::random_free_alpha(rng, p.index_count() + 1, n, q);
    const auto ext = solve_extended(p, target, a);
    const auto direct = solve(ext.extended, a);
    if (ext.route == ExtendedSolve::Route::BaseInfeasible) continue;
    CHECK(ext.feasible() == direct.feasible());
    if (ext.feasible()) CHECK(validate(ext.extended, a, *ext.delta).empty());
  }
}

TEST_CASE("fold_to_window") {
  const std::vector<Rational> zero(5, Rational(0));
  CHECK(fold_to_window(zero) == std::vector<std::int64_t>(5, 0));
  const std::vector<Rational> half(5, Rational(1, 2));
  const auto t = fold_to_window(half);
  std::set<Rational> folded;
  for (int k = 0; k < 5; ++k) folded.insert(half[k] - t[k]);
  REQUIRE(folded.size() == 1);
  CHECK(*folded.begin() > -1);
  CHECK(*folded.begin() <= Rational(9, 10));

  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 2000; ++trial) {
    const int k = 1 + static_cast<int>(rng() % 8);
    std::vector<Rational> x;
    for (int i = 0; i < k; ++i) x.push_back(oracle::random_rational(rng));
    const auto tt = fold_to_window(x);
    const Rational bound = 1 - Rational(1, 2 * k);
    for (int i = 0; i < k; ++i) {
      const Rational y = x[i] - tt[i];
      CHECK(y > -1);
      CHECK(y <= bound);
      for (int j = 0; j < k; ++j) {
        const Rational diff = y - (x[j] - tt[j]);
        CHECK((diff < 0 ? -diff : diff) <= bound);
      }
    }
  }
}

TEST_CASE("apply_splitting examples") {
  const Poset d = builtin_poset("diamond");
  const auto z = z_element(d);
  const auto r = z.r;
  Matrix lifts(5, 1);
  for (int i = 0; i < 5; ++i) lifts.at(i, 0) = r[i];
  const auto img = apply_splitting(d, z, 3, lifts, solver_provider(d));
  CHECK_FALSE(img.zero);
  CHECK(img.exponents == Matrix(5, 1));

  auto off = lifts;
  off.at(2, 0) += 1;
  CHECK(apply_splitting(d, z, 3, off, solver_provider(d)).zero);

  const auto residue = alpha_space(d, z, 3, 2).at(100);
  Matrix a2 = residue.entries;
  for (int i = 0; i < 5; ++i) a2.at(i, 0) += 3 * i;
  const auto img2 = apply_splitting(d, z, 3, a2, solver_provider(d));
  REQUIRE_FALSE(img2.zero);
  const auto delta = *solve(d, residue).delta;
  for (int i = 0; i < 5; ++i) {
    CHECK(img2.exponents.at(i, 0) == i + delta.at(i, 0));
    CHECK(img2.exponents.at(i, 1) == delta.at(i, 1));
  }

  const auto v = certify(d, 2, 3);
  const auto img3 = apply_splitting(d, z, 3, a2, verdict_provider(v));
  CHECK(img3.exponents == img2.exponents);

  const auto refuted = certify(d, 3, 3);
  Matrix w = refuted.witness->entries;
  CHECK_THROWS_AS(apply_splitting(d, z, 3, w, verdict_provider(refuted)), MissingDeltaError);
  CHECK_THROWS_AS(apply_splitting(d, z, 3, w, solver_provider(d)), MissingDeltaError);
}

TEST_CASE("reproduce the diamond counterexample") {
  const auto three = reproduce_theorem_c(3);
  CHECK(three.congruent);
  CHECK_FALSE(three.solve.feasible());
  CHECK_FALSE(three.solve.trace.empty());
  for (std::int64_t q : {4, 5, 7, 8, 9, 11}) {
    const auto rep = reproduce_theorem_c(q);
    CHECK(rep.congruent);
    REQUIRE(rep.solve.feasible());
    CHECK(validate(rep.diamond, rep.alpha, *rep.solve.delta).empty());
  }
  CHECK_THROWS_AS(reproduce_theorem_c(2), PreconditionError);
}
