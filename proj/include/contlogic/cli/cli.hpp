#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace contlogic::cli {

enum ExitCode { kOk = 0, kFailure = 1, kUsage = 2 };

/// Runs one command line. The JSON report goes to `out` (or the --out file) and
/// diagnostics to `err`. Returns 0 on success, 1 when the command ran but its check
/// failed or its input was outside the operation's domain, 2 on usage or input errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

std::string_view version();

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = 14695981039346656037ull);

}  // namespace contlogic::cli
