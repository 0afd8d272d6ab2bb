#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace convexkit::cli {

/// Exit codes: 0 certified success; 2 theorem says no, with certificate;
/// 1 tool failure; 64 malformed JSON; 65 dimension mismatch.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kNegativeCertificate = 2;
inline constexpr int kMalformedJson = 64;
inline constexpr int kDimensionMismatch = 65;

/// Parses and runs one invocation. The report is written to the configured
/// output path (or `out` when none is given); diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace convexkit::cli
