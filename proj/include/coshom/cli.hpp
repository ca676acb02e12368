#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coshom {

/// Command-line driver on already-split arguments (program name excluded).
/// Reports go to `out`, structured error records to `err`.  Returns the
/// process exit code: 0 success, 1 malformed input, 2 violated mathematical
/// contract, 3 verification mismatch.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coshom
