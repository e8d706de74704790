#pragma once

#include <iosfwd>

namespace pebble::cli {

enum ExitCode { ok = 0, verification_failed = 1, usage_error = 2 };

/// Entry point of the `pebbles` tool. Normal output goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace pebble::cli
