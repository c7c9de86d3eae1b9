#pragma once

#include <ostream>
#include <string>

#include "bosonext/bosonic.hpp"

namespace bosonext {

/** Exit codes of the command-line front end. */
enum ExitCode { kExitOk = 0, kExitComputation = 1, kExitUsage = 2 };

/**
 * @brief Runs the command line; JSON (or text) results go to out, diagnostics to err.
 *
 * Subcommands: normalize, form, pair, gram, gb table, verify. Returns an ExitCode.
 */
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/** ASCII rendering in the expression language, terms ordered by descending level then basis word. */
std::string render_text(const HatAlgebra& h, const HatElem& x);

}  // namespace bosonext
