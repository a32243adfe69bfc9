#pragma once

#include <iosfwd>

namespace nbcrw::cli {

/// Runs one `nbcrw` invocation. Results go to `out` (or the `-o` file),
/// warnings and the JSON error object to `err`. Returns the process exit
/// code: 0 on success, otherwise the error code of the failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nbcrw::cli
