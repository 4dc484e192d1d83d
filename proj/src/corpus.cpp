#include "hibi/corpus.hpp"

#include "hibi/errors.hpp"

namespace hibi {

Poset builtin_poset(std::string_view name) {
  for (const auto& e : builtin_corpus()) {
    if (e.name == name) return parse_poset(e.text);
  }
  throw PreconditionError("no built-in poset named '" + std::string(name) + "'");
}

std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (const auto& e : builtin_corpus()) out.push_back(e.name);
  return out;
}

}  // namespace hibi
