#pragma once

namespace qpass::cli {

// Full command-line driver. Returns the process exit code:
//   0 success, 2 bad config/flags, 3 missing fixture, 4 write failure,
//   5 verification failure (verify-bounds found a failing check).
int run_cli(int argc, char** argv);

}  // namespace qpass::cli
