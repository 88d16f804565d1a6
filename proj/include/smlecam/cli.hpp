#pragma once

#include <iosfwd>

namespace smle::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // I/O errors, failed verification
inline constexpr int kExitUsage = 2;    // flag and configuration errors

/// Entry point for `smle_cam <search|sweep|compare|verify> [flags]`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace smle::cli
