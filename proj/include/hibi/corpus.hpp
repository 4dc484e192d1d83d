#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hibi/poset.hpp"

namespace hibi {

struct CorpusEntry {
  std::string name;
  std::string text;
};

/// The poset files shipped in corpus/, compiled in, sorted by name.
const std::vector<CorpusEntry>& builtin_corpus();

/// Parses the named entry; throws PreconditionError for unknown names.
Poset builtin_poset(std::string_view name);

std::vector<std::string> builtin_names();

}  // namespace hibi
