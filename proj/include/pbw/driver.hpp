#pragma once

// Command-line driver behind the `pbw` binary.
//
// Exit codes: 0 when every check passes, 1 when a check fails (witnesses are
// printed), 2 for usage, parse and resource errors.

#include <ostream>
#include <string>
#include <vector>

#include "pbw/report.hpp"

namespace pbw {

enum class OutputFormat { Text, JsonLines };

void write_report(std::ostream& out, const Report& r, OutputFormat f);

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pbw
