#pragma once

namespace mutkit {

// Exit codes: 0 success, 1 usage/IO/law errors, 2 hypothesis violations,
// 3 statistical verification failure.
int run_cli(int argc, char** argv);

}  // namespace mutkit
