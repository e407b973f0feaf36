#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace recourse::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitSizeGuard = 2;

// Overrides the default output directory when --output-dir is absent.
inline constexpr const char* kOutputDirEnv = "RECOURSE_OUTPUT_DIR";

/// Runs one invocation (args[0] is the program name). Diagnostics go to err;
/// reports are only written to files.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace recourse::cli
