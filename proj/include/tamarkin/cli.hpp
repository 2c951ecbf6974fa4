#pragma once

#include <iosfwd>

namespace tamarkin {

/// Entry point of the `tamarkin` command. Returns the process exit code:
/// 0 on success, 1 when a checked inequality or certificate fails, 2 on
/// input errors (reported as JSON on `err`).
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace tamarkin
