#pragma once

// Command-line surface: check / synth / sim / demo / report.
// Exit codes: 0 pass, 1 diagnostics or law failure, 2 usage/parse errors.

#include <iosfwd>
#include <string>
#include <vector>

namespace norflow {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace norflow
