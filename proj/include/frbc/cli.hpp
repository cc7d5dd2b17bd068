#pragma once

namespace frbc {

// Entry point behind the frbc binary; also callable from tests.
// Returns 0 on success, 1 on usage errors (unknown flags, unreadable
// paths, bad config), 2 when the pipeline itself fails (best-effort log
// still written when --out was given).
int run_cli(int argc, const char* const* argv);

}  // namespace frbc
