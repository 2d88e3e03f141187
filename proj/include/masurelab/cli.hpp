#pragma once

#include <iosfwd>
#include <string>

namespace masurelab::cli {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes: 0 success, 2 usage error, 3 computational refusal or negative
// verdict, 70 internal invariant violation.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

std::string sha256_hex(const std::string& data);

}  // namespace masurelab::cli
