#pragma once

#include <ostream>

namespace solgenus::cli {

/// Entry point of the `solgenus` tool. Exit codes: 0 success, 1 domain error,
/// 2 usage error. Results go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace solgenus::cli
