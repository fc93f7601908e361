#ifndef DISTLINK_CLI_CLI_H_
#define DISTLINK_CLI_CLI_H_

#include <iosfwd>

namespace distlink::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInput = 2;   // bad arguments, files or data
inline constexpr int kExitBudget = 3;  // clique search ran out of nodes

// Entry point of the `distlink` tool. Commands: distmat, attack, calibrate,
// simulate, gendata. The default seed comes from DISTLINK_SEED when --seed is
// not given.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace distlink::cli

#endif  // DISTLINK_CLI_CLI_H_
