#ifndef FOLP_CLI_HPP
#define FOLP_CLI_HPP

#include <iosfwd>

namespace folp::cli {

/// Runs one command (parse, prove, check, model-check, axiom-match).
/// Returns the process exit status; 2 signals usage, I/O or format errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace folp::cli

#endif  // FOLP_CLI_HPP
