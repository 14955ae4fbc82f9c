#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace abelicomp::cli {

/// Runs one invocation; args exclude the program name. Returns the exit code:
/// 0 success, 1 verification mismatch, 2 usage or computation error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::vector<std::string> preset_names();
/// Rows s ascending, columns m ascending.
std::string table_csv(const std::string& preset);
std::string table_json(const std::string& preset);

}  // namespace abelicomp::cli
