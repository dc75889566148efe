#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace raschkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNotConverged = 2;

// args[0] is the program name. Errors are written to err as
// "error[<kind>]: <message>".
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace raschkit::cli
