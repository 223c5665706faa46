#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gclink::cli {

inline constexpr const char* kSchema = "gclink/1";
inline constexpr const char* kThreadsEnv = "GCLINK_THREADS";
inline constexpr unsigned long long kDefaultSeed = 1;

enum ExitCode { kOk = 0, kDomainError = 1, kUsageError = 2 };

/// Runs one gclink command line; args excludes the program name.  Results go
/// to `out`, diagnostics and error JSON to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace gclink::cli
