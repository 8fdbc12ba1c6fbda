#pragma once

namespace gentess::cli {

/// Entry point of the gentess tool. Returns 0 on success, 1 on validation
/// failures (bad input, violated preconditions) and 2 on numerical failures.
int run(int argc, char** argv);

} // namespace gentess::cli
