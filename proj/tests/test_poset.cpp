#include <doctest.h>

#include <fstream>
#include <sstream>

#include "hibi/classify.hpp"
#include "hibi/corpus.hpp"
#include "hibi/errors.hpp"
#include "hibi/poset.hpp"
#include "oracles.hpp"

using namespace hibi;

namespace {

std::set<std::pair<std::string, std::string>> named_covers(const Poset& p) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& c : p.covers()) out.insert({p.name(c.lower), p.name(c.upper)});
  return out;
}

std::vector<std::string> names_of(const Poset& p, const std::vector<Index>& xs) {
  std::vector<std::string> out;
  for (Index x : xs) out.push_back(p.name(x));
  return out;
}

}  // namespace

TEST_CASE("parse single element") {
  const Poset p = parse_poset("elements: a\ncovers:");
  CHECK(p.size() == 1);
  CHECK(p.covers() == std::vector<Cover>{{0, 1}});
}

TEST_CASE("parse diamond") {
  const Poset p = parse_poset("elements: v1 v2 v3 v4\ncovers: v1<v3 v1<v4 v2<v3 v2<v4\n");
  CHECK(p.size() == 4);
  CHECK(p.covers() == std::vector<Cover>{{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}});
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_poset("covers: a<b b<a"), CycleError);
  CHECK_THROWS_AS(parse_poset("elements: a a\ncovers:"), DuplicateNameError);
  CHECK_THROWS_AS(parse_poset("elements: a b c\ncovers: a<b b<c a<c"), RedundantCoverError);
  CHECK_THROWS_AS(parse_poset("elements: a b\ncovers: a-b"), ParseError);
  CHECK_THROWS_AS(parse_poset("elements: a\ncovers: a<z"), ParseError);
  CHECK_THROWS_AS(parse_poset("nodes: a"), ParseError);
  CHECK_THROWS_AS(parse_poset("elements: a\nelements: b"), ParseError);
  CHECK_THROWS_AS(parse_poset("elements: a\ncovers: a<a"), CycleError);
}

TEST_CASE("comments and blank lines are skipped") {
  const Poset p = parse_poset("# hello\n\nelements: x y\n# mid\ncovers: x<y\n");
  CHECK(p.size() == 2);
  CHECK(p.less(1, 2));
}

TEST_CASE("text round trip over the corpus") {
  for (const auto& e : builtin_corpus()) {
    const Poset p = parse_poset(e.text);
    CHECK(parse_poset(p.to_text()) == p);
    CHECK(p.digest().size() == 64);
  }
}

TEST_CASE("corpus files on disk match the compiled corpus") {
  for (const auto& e : builtin_corpus()) {
    std::ifstream in(std::string(CORPUS_DIR) + "/" + e.name + ".poset");
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(parse_poset(ss.str()) == parse_poset(e.text));
  }
}

TEST_CASE("ideals of small posets") {
  auto chain = enumerate_ideals(make_chain(3, "v"));
  REQUIRE(chain.size() == 4);
  CHECK(chain[0].members.empty());
  CHECK(chain[3].members == std::vector<Index>{1, 2, 3});
  CHECK(enumerate_ideals(make_antichain(3)).size() == 8);

  const Poset d = builtin_poset("diamond");
  const auto ideals = enumerate_ideals(d);
  std::vector<std::vector<std::string>> got;
  for (const auto& I : ideals) got.push_back(names_of(d, I.members));
  const std::vector<std::vector<std::string>> want{
      {}, {"v1"}, {"v2"}, {"v1", "v2"}, {"v1", "v2", "v3"}, {"v1", "v2", "v4"}, {"v1", "v2", "v3", "v4"}};
  CHECK(got == want);
}

TEST_CASE("ideal counts of chains and antichains") {
  for (int k = 0; k <= 10; ++k) {
    CHECK(enumerate_ideals(make_antichain(k)).size() == (std::size_t{1} << k));
    CHECK(enumerate_ideals(make_chain(k)).size() == static_cast<std::size_t>(k + 1));
  }
}

TEST_CASE("ideals agree with the subset filter on random posets") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 120; ++trial) {
    const int d = static_cast<int>(rng() % 13);
    const Poset p = oracle::random_poset(rng, d, 0.1 + 0.4 * (trial % 5) / 4.0);
    const auto got = enumerate_ideals(p);
    const auto want = oracle::ideals(p);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i].members == want[i]);
    for (const auto& I : got) CHECK(is_ideal(p, I.members));
  }
}

TEST_CASE("top nodes") {
  CHECK(top_nodes(make_chain(3)).empty());
  const Poset d = builtin_poset("diamond");
  CHECK(names_of(d, top_nodes(d)) == std::vector<std::string>{"v3", "v4"});
  const Poset q = builtin_poset("fig1-q");
  CHECK(names_of(q, top_nodes(q)) == std::vector<std::string>{"p", "u1"});
}

TEST_CASE("classification of the named examples") {
  for (int k = 0; k <= 6; ++k) {
    const Poset c = make_chain(k);
    const auto cl = classify_top_nodes(c);
    CHECK(cl.verdict == Coverage::Covered);
    CHECK(verify_trace(c, cl));
  }
  const Poset d = builtin_poset("diamond");
  const auto cd = classify_top_nodes(d);
  CHECK(cd.verdict == Coverage::NotCovered);
  REQUIRE(cd.witness);
  CHECK(d.name(cd.witness->first) == "v3");
  CHECK(d.name(cd.witness->second) == "v4");

  const Poset q = builtin_poset("fig1-q");
  const auto cq = classify_top_nodes(q);
  CHECK(cq.verdict == Coverage::Covered);
  std::string why;
  CHECK_MESSAGE(verify_trace(q, cq, &why), why);
  bool split_at_p = false;
  for (const auto& s : cq.trace) {
    if (s.kind == TraceStep::Kind::SplitAt && q.name(s.node) == "p") {
      split_at_p = true;
      CHECK(names_of(q, s.members) == std::vector<std::string>{"v1", "v2", "v3"});
      CHECK(names_of(q, s.lower) == std::vector<std::string>{"u1", "u2", "u3", "u4"});
    }
  }
  CHECK(split_at_p);
  CHECK(describe(q, cq.trace.back()) == "Attach q on u4");
}

TEST_CASE("classification matches pairwise comparability of top nodes") {
  std::mt19937_64 rng(5);
  int covered = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 9);
    const Poset p = oracle::random_poset(rng, d, 0.15 + 0.1 * (trial % 4));
    const auto r = oracle::reach(p);
    std::vector<Index> tops;
    for (Index j = 1; j <= d; ++j)
      if (oracle::lower_cover_count(p, j) >= 2) tops.push_back(j);
    bool chain = true;
    for (Index a : tops)
      for (Index b : tops)
        if (a != b && !r[a][b] && !r[b][a]) chain = false;
    const auto c = classify_top_nodes(p);
    CHECK((c.verdict == Coverage::Covered) == chain);
    if (c.verdict == Coverage::Covered) {
      ++covered;
      std::string why;
      CHECK_MESSAGE(verify_trace(p, c, &why), why);
    } else {
      REQUIRE(c.witness);
      const auto [a, b] = *c.witness;
      CHECK(oracle::lower_cover_count(p, a) >= 2);
      CHECK(oracle::lower_cover_count(p, b) >= 2);
      CHECK(!r[a][b]);
      CHECK(!r[b][a]);
    }
  }
  CHECK(covered > 50);
}

TEST_CASE("tampered traces are rejected") {
  const Poset q = builtin_poset("fig1-q");
  auto c = classify_top_nodes(q);
  auto bad = c;
  bad.trace.pop_back();
  CHECK_FALSE(verify_trace(q, bad));
  bad = c;
  for (auto& s : bad.trace) {
    if (s.kind == TraceStep::Kind::Attach) s.target = 1;
  }
  CHECK_FALSE(verify_trace(q, bad));
  bad = c;
  for (auto& s : bad.trace) {
    if (s.kind == TraceStep::Kind::SplitAt) s.node = q.find("u2").value();
  }
  CHECK_FALSE(verify_trace(q, bad));
}

TEST_CASE("attach_node") {
  const Poset two = make_chain(2, "v");
  const Poset three = attach_node(two, 2, "v3");
  CHECK(three == make_chain(3, "v"));

  const Poset q = builtin_poset("fig1-q");
  std::vector<Index> without_q;
  for (Index i = 1; i <= q.size(); ++i)
    if (q.name(i) != "q") without_q.push_back(i);
  const Poset sub = induced_subposet(q, without_q);
  const Poset back = attach_node(sub, sub.find("u4").value(), "q");
  CHECK(named_covers(back) == named_covers(q));
  CHECK(back.lower_covers(back.find("q").value()).size() == 1);

  const Poset anti = attach_node(make_chain(1, "a"), 0, "a2");
  CHECK(anti == make_antichain(2, "a"));

  CHECK_THROWS_AS(attach_node(two, 7, "x"), PreconditionError);
  CHECK_THROWS_AS(attach_node(two, 1, "v1"), DuplicateNameError);
}

TEST_CASE("attach_node on random posets") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = static_cast<int>(rng() % 8);
    const Poset p = oracle::random_poset(rng, d);
    const Index target = static_cast<Index>(rng() % (d + 1));
    const Poset e = attach_node(p, target, "fresh");
    CHECK(e.size() == d + 1);
    CHECK(parse_poset(e.to_text()) == e);
    const Index x = d + 1;
    CHECK(e.lower_covers(x).size() == 1);
    CHECK(e.lower_covers(x).front() == target);
    CHECK(e.upper_covers(x).empty());
    std::vector<Index> old;
    for (Index i = 1; i <= d; ++i) old.push_back(i);
    CHECK(induced_subposet(e, old) == p);
  }
}

TEST_CASE("ordinal_sum") {
  const Poset pt1 = make_chain(1, "a");
  const Poset pt2 = make_chain(1, "b");
  const Poset s = ordinal_sum(pt1, pt2, "j");
  CHECK(s.size() == 3);
  CHECK(s.less(s.find("b1").value(), s.find("j").value()));
  CHECK(s.less(s.find("j").value(), s.find("a1").value()));
  CHECK(top_nodes(s).empty());

  const Poset a2 = ordinal_sum(make_antichain(2), Poset(), "m");
  CHECK(a2.size() == 3);
  CHECK(a2.less(a2.find("m").value(), a2.find("a1").value()));
  CHECK(a2.less(a2.find("m").value(), a2.find("a2").value()));

  CHECK_THROWS_AS(ordinal_sum(make_chain(2, "x"), make_chain(1, "x")), DuplicateNameError);
}

TEST_CASE("ordinal_sum on random pairs") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const Poset up = oracle::random_poset(rng, static_cast<int>(rng() % 6), 0.3, "u");
    const Poset lo = oracle::random_poset(rng, static_cast<int>(rng() % 6), 0.3, "l");
    const Poset s = ordinal_sum(up, lo, "joint");
    CHECK(s.size() == up.size() + lo.size() + 1);
    CHECK(parse_poset(s.to_text()) == s);
    const auto r = oracle::reach(s);
    for (Index i = 1; i <= lo.size(); ++i) {
      for (Index j = lo.size() + 1; j <= s.size(); ++j) CHECK(r[i][j]);
    }
  }
}
