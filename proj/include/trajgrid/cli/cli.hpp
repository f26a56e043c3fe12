#pragma once

namespace trajgrid {

/// Entry point of the `trajgrid` tool. Returns 0 on success, 1 on usage or validation
/// errors, 2 on runtime failures.
int run_cli(int argc, const char* const* argv);

}  // namespace trajgrid
