#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dp3 {

// Runs one dp3 command line (args exclude the program name). JSON or CSV goes to out
// unless --out is given; errors go to err as {"error": kind, "message": text}.
// Exit codes: 0 ok, 2 validation, 3 mathematical condition, 4 integration failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int exit_code_for(const std::string& error_kind);

}  // namespace dp3
