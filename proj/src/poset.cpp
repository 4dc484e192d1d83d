#include "hibi/poset.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include <openssl/evp.h>

#include "hibi/digest.hpp"
#include "hibi/errors.hpp"

namespace hibi {

namespace {

const std::string kBottomName = "-inf";

bool valid_name(std::string_view name) {
  if (name.empty() || name == kBottomName || name.front() == '#') {
    return false;
  }
  return name.find_first_of("<: \t\r\n") == std::string_view::npos;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Poset::Poset() : Poset({}, {}) {}

Poset::Poset(std::vector<std::string> names, std::vector<Cover> user_covers)
    : names_(std::move(names)) {
  const int d = size();
  {
    std::set<std::string_view> seen;
    for (const auto& n : names_) {
      if (!valid_name(n)) throw ParseError("invalid element name '" + n + "'");
      if (!seen.insert(n).second) throw DuplicateNameError("duplicate element name '" + n + "'");
    }
  }

  lower_.assign(d + 1, {});
  upper_.assign(d + 1, {});
  std::set<Cover> unique;
  for (const Cover& c : user_covers) {
    if (c.lower < 1 || c.lower > d || c.upper < 1 || c.upper > d) {
      throw ParseError("cover refers to an unknown element index");
    }
    if (c.lower == c.upper) {
      throw CycleError("element '" + names_[c.lower - 1] + "' covers itself");
    }
    if (!unique.insert(c).second) {
      throw ParseError("duplicate cover " + names_[c.lower - 1] + "<" + names_[c.upper - 1]);
    }
  }
  for (const Cover& c : unique) {
    lower_[c.upper].push_back(c.lower);
    upper_[c.lower].push_back(c.upper);
  }
  for (Index k = 1; k <= d; ++k) {
    if (lower_[k].empty()) {
      lower_[k].push_back(kBottom);
      upper_[kBottom].push_back(k);
      unique.insert({kBottom, k});
    }
  }
  for (auto& v : lower_) std::sort(v.begin(), v.end());
  for (auto& v : upper_) std::sort(v.begin(), v.end());
  covers_.assign(unique.begin(), unique.end());

  // Kahn's algorithm; a leftover element means a cycle among user elements.
  std::vector<int> indegree(d + 1, 0);
  for (Index i = 0; i <= d; ++i) indegree[i] = static_cast<int>(lower_[i].size());
  std::set<Index> ready;
  for (Index i = 0; i <= d; ++i) {
    if (indegree[i] == 0) ready.insert(i);
  }
  while (!ready.empty()) {
    Index i = *ready.begin();
    ready.erase(ready.begin());
    topo_.push_back(i);
    for (Index j : upper_[i]) {
      if (--indegree[j] == 0) ready.insert(j);
    }
  }
  if (static_cast<int>(topo_.size()) != d + 1) {
    // Every element of a cycle has a lower cover inside the cycle, so none
    // of them received the (0, k) edge; the cycle is among user covers.
    std::string members;
    for (Index i = 1; i <= d; ++i) {
      if (indegree[i] > 0) members += (members.empty() ? "" : " ") + names_[i - 1];
    }
    throw CycleError("cover relation has a cycle through: " + members);
  }

  above_.assign(d + 1, boost::dynamic_bitset<>(d + 1));
  for (auto it = topo_.rbegin(); it != topo_.rend(); ++it) {
    for (Index j : upper_[*it]) {
      above_[*it].set(j);
      above_[*it] |= above_[j];
    }
  }
  for (const Cover& c : covers_) {
    for (Index mid : upper_[c.lower]) {
      if (mid != c.upper && above_[mid].test(c.upper)) {
        throw RedundantCoverError("cover " + name(c.lower) + "<" + name(c.upper) +
                                  " is implied by " + name(c.lower) + "<" + name(mid) +
                                  " and " + name(mid) + "<...<" + name(c.upper));
      }
    }
  }
}

const std::string& Poset::name(Index i) const {
  return i == kBottom ? kBottomName : names_.at(i - 1);
}

std::optional<Index> Poset::find(std::string_view name) const {
  for (int i = 0; i < size(); ++i) {
    if (names_[i] == name) return i + 1;
  }
  return std::nullopt;
}

std::vector<Cover> Poset::user_covers() const {
  std::vector<Cover> out;
  for (const Cover& c : covers_) {
    if (c.lower != kBottom) out.push_back(c);
  }
  return out;
}

std::vector<Index> Poset::maximal_elements() const {
  std::vector<Index> out;
  for (Index i = 0; i < index_count(); ++i) {
    if (is_maximal(i)) out.push_back(i);
  }
  return out;
}

int Poset::height() const {
  std::vector<int> depth(index_count(), 0);
  int best = 0;
  for (Index i : topo_) {
    for (Index j : upper_[i]) depth[j] = std::max(depth[j], depth[i] + 1);
    best = std::max(best, depth[i]);
  }
  return best;
}

std::string Poset::to_text() const {
  std::string out = "elements:";
  for (const auto& n : names_) out += " " + n;
  out += "\ncovers:";
  for (const Cover& c : user_covers()) out += " " + name(c.lower) + "<" + name(c.upper);
  out += "\n";
  return out;
}

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex.push_back(kHex[md[i] >> 4]);
    hex.push_back(kHex[md[i] & 15]);
  }
  return hex;
}

std::string Poset::digest() const { return sha256_hex(to_text()); }

Poset parse_poset(std::string_view text) {
  std::optional<std::vector<std::string>> declared;
  std::optional<std::vector<std::pair<std::string, std::string>>> pairs;
  int line_no = 0;
  while (!text.empty()) {
    std::size_t eol = text.find('\n');
    std::string_view line = trim(text.substr(0, eol));
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    const auto where = "line " + std::to_string(line_no) + ": ";
    std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) throw ParseError(where + "expected 'elements:' or 'covers:'");
    std::string_view key = trim(line.substr(0, colon));
    auto tokens = split_ws(line.substr(colon + 1));
    if (key == "elements") {
      if (declared) throw ParseError(where + "second elements line");
      declared.emplace();
      for (auto t : tokens) declared->emplace_back(t);
    } else if (key == "covers") {
      if (pairs) throw ParseError(where + "second covers line");
      pairs.emplace();
      for (auto t : tokens) {
        std::size_t lt = t.find('<');
        if (lt == std::string_view::npos || lt == 0 || lt + 1 == t.size() ||
            t.find('<', lt + 1) != std::string_view::npos) {
          throw ParseError(where + "malformed cover '" + std::string(t) + "', expected a<b");
        }
        pairs->emplace_back(std::string(t.substr(0, lt)), std::string(t.substr(lt + 1)));
      }
    } else {
      throw ParseError(where + "unknown key '" + std::string(key) + "'");
    }
  }
  if (!declared && !pairs) throw ParseError("empty poset file");

  std::vector<std::string> names;
  if (declared) {
    names = *declared;
  } else {
    std::set<std::string> seen;
    for (const auto& [a, b] : *pairs) {
      for (const auto* n : {&a, &b}) {
        if (seen.insert(*n).second) names.push_back(*n);
      }
    }
  }
  std::map<std::string, Index> index_of;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!index_of.emplace(names[i], static_cast<Index>(i + 1)).second) {
      throw DuplicateNameError("duplicate element name '" + names[i] + "'");
    }
  }
  std::vector<Cover> covers;
  if (pairs) {
    for (const auto& [a, b] : *pairs) {
      auto ia = index_of.find(a);
      auto ib = index_of.find(b);
      if (ia == index_of.end() || ib == index_of.end()) {
        throw ParseError("cover " + a + "<" + b + " names an undeclared element");
      }
      covers.push_back({ia->second, ib->second});
    }
  }
  return Poset(std::move(names), std::move(covers));
}

bool is_ideal(const Poset& poset, std::span<const Index> members) {
  std::vector<char> in(poset.index_count(), 0);
  for (Index i : members) {
    if (i < 1 || i > poset.size()) return false;
    in[i] = 1;
  }
  for (Index i : members) {
    for (Index lo : poset.lower_covers(i)) {
      if (lo != kBottom && !in[lo]) return false;
    }
  }
  return true;
}

std::vector<PosetIdeal> enumerate_ideals(const Poset& poset) {
  // Walk a linear extension; an element may join only if its lower covers did.
  std::vector<Index> order;
  for (Index i : poset.topological_order()) {
    if (i != kBottom) order.push_back(i);
  }
  std::vector<PosetIdeal> ideals;
  std::vector<char> in(poset.index_count(), 0);
  in[kBottom] = 1;
  std::vector<Index> current;
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == order.size()) {
      PosetIdeal ideal{current};
      std::sort(ideal.members.begin(), ideal.members.end());
      ideals.push_back(std::move(ideal));
      return;
    }
    const Index x = order[pos];
    self(self, pos + 1);
    const auto lows = poset.lower_covers(x);
    if (std::all_of(lows.begin(), lows.end(), [&](Index l) { return in[l] != 0; })) {
      in[x] = 1;
      current.push_back(x);
      self(self, pos + 1);
      current.pop_back();
      in[x] = 0;
    }
  };
  rec(rec, 0);
  std::sort(ideals.begin(), ideals.end(), [](const PosetIdeal& a, const PosetIdeal& b) {
    if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
    return a.members < b.members;
  });
  return ideals;
}

std::vector<Index> top_nodes(const Poset& poset) {
  std::vector<Index> out;
  for (Index j = 1; j <= poset.size(); ++j) {
    if (poset.lower_covers(j).size() >= 2) out.push_back(j);
  }
  return out;
}

Poset attach_node(const Poset& poset, Index target, std::string name) {
  if (target < 0 || target > poset.size()) {
    throw PreconditionError("attach target index " + std::to_string(target) + " out of range");
  }
  if (poset.find(name)) throw DuplicateNameError("element '" + name + "' already exists");
  auto names = poset.names();
  names.push_back(std::move(name));
  auto covers = poset.user_covers();
  if (target != kBottom) covers.push_back({target, poset.size() + 1});
  return Poset(std::move(names), std::move(covers));
}

Poset ordinal_sum(const Poset& upper, const Poset& lower, std::string joint_name) {
  std::vector<std::string> names = lower.names();
  names.push_back(std::move(joint_name));
  for (const auto& n : upper.names()) names.push_back(n);
  {
    std::set<std::string_view> seen;
    for (const auto& n : names) {
      if (!seen.insert(n).second) throw DuplicateNameError("name clash in ordinal sum: '" + n + "'");
    }
  }
  const Index joint = lower.size() + 1;
  std::vector<Cover> covers = lower.user_covers();
  for (Index m : lower.maximal_elements()) {
    if (m != kBottom) covers.push_back({m, joint});
  }
  for (const Cover& c : upper.covers()) {
    const Index lo = c.lower == kBottom ? joint : joint + c.lower;
    covers.push_back({lo, joint + c.upper});
  }
  return Poset(std::move(names), std::move(covers));
}

Poset induced_subposet(const Poset& poset, std::span<const Index> members) {
  std::vector<Index> keep(members.begin(), members.end());
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  std::vector<Index> local(poset.index_count(), 0);
  std::vector<std::string> names;
  for (Index x : keep) {
    if (x < 1 || x > poset.size()) throw PreconditionError("subposet member out of range");
    names.push_back(poset.name(x));
    local[x] = static_cast<Index>(names.size());
  }
  std::vector<Cover> covers;
  for (Index a : keep) {
    for (Index b : keep) {
      if (!poset.less(a, b)) continue;
      bool direct = std::none_of(keep.begin(), keep.end(), [&](Index c) {
        return poset.less(a, c) && poset.less(c, b);
      });
      if (direct) covers.push_back({local[a], local[b]});
    }
  }
  return Poset(std::move(names), std::move(covers));
}

Poset make_chain(int length, std::string_view prefix) {
  std::vector<std::string> names;
  std::vector<Cover> covers;
  for (int i = 1; i <= length; ++i) {
    names.push_back(std::string(prefix) + std::to_string(i));
    if (i > 1) covers.push_back({i - 1, i});
  }
  return Poset(std::move(names), std::move(covers));
}

Poset make_antichain(int count, std::string_view prefix) {
  std::vector<std::string> names;
  for (int i = 1; i <= count; ++i) names.push_back(std::string(prefix) + std::to_string(i));
  return Poset(std::move(names), {});
}

}  // namespace hibi
