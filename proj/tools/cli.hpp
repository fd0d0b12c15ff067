// cli.hpp — command-line front end: summation, Laplace transforms, Borel
// sums, the zeta' generating function, and the identity verification suite.
#pragma once

#include <iosfwd>

namespace ramasum {

// Returns the process exit code: 0 success, 1 usage error, 2 when a
// non-hypothesis verification check fails.
int cli_execute(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ramasum
