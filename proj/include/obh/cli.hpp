#pragma once
// Command-line front end. Commands:
//   nfunc inspect --family <f> --p <v> [--q <v>]
//   eig solve    --config <file> --r <v> [--strict]
//   eig sweep    --config <file> --r a,b,c [--strict]
//   spectrum scan --config <file> --lambdas a,b,c
//   oracle beam  --n <int> [--p <v>]
// Exit codes: 0 success, 1 usage/config/domain error, 2 non-convergence
// under --strict.
#include <ostream>
#include <string>
#include <vector>

namespace obh {

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace obh
