#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cutpaste::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

/// Runs the tool on `args` (argv without the program name). Never throws;
/// failures become exit codes with a message on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cutpaste::cli
