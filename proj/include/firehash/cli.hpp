#pragma once

#include <string>
#include <vector>

namespace firehash::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

inline constexpr int kReportSchemaVersion = 1;

/// Entry point of the `firehash` tool. `args` excludes the program name.
/// Returns 0 on success, 1 on usage errors (usage printed to stderr), 2 on
/// data or validation errors.
int run(const std::vector<std::string>& args);

int run(int argc, char** argv);

}  // namespace firehash::cli
