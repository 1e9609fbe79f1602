#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ppad::cli {

// Exit codes.
constexpr int kOk = 0;
constexpr int kInvalid = 2;
constexpr int kInternal = 3;

// Runs one subcommand; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ppad::cli
