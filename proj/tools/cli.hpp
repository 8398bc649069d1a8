#pragma once

namespace adapt::cli {

/// Exit codes: 0 success, 1 local I/O failure, 2 validation error,
/// 3 no fit or no agreement, 4 integrity error, 5 network error.
int run(int argc, char** argv);

}  // namespace adapt::cli
