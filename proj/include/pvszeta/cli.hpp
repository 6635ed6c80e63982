#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pvs {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

/// Runs one `pvszeta` invocation; `args` excludes the program name.
/// Reports go to `out` as JSON lines, diagnostics to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pvs
