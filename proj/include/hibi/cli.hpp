#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hibi/report.hpp"

namespace hibi {

struct CommandResult {
  int status = 2;
  std::optional<Report> report;
};

/// Runs one CLI command (args exclude the program name). Exit status:
/// 0 affirmative, 1 negative, 2 usage or input error. The report goes to
/// `out` unless --out names a file; diagnostics go to `err`.
CommandResult run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hibi
