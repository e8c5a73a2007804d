#pragma once

#include <iosfwd>

namespace regsys {

// Full command-line driver; returns the process exit code.
// 0 success (equiv: equivalent), 1 not equivalent, 2 parse/usage error,
// 3 non-squarefree modulus.
int cli_main(int argc, const char* const* argv, std::istream& in, std::ostream& out,
             std::ostream& err);

} // namespace regsys
