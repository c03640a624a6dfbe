#pragma once

#include <iosfwd>

namespace liesde {

/// Parses argv and runs one subcommand: drift, casimir, converge, uniform,
/// localerr or dump-noise. Returns the process exit status; failures print a
/// single "error: ..." line to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace liesde
