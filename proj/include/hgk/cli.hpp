#pragma once

// Command-line frontend. Exit codes: 0 pass, 1 check failure,
// 2 usage or precondition error, 3 parse error.

#include <iosfwd>

namespace hgk::cli {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kParse = 3;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hgk::cli
