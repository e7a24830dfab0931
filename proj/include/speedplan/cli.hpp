#ifndef SPEEDPLAN_CLI_HPP_
#define SPEEDPLAN_CLI_HPP_

namespace speedplan {

/// Command-line entry point. Exit codes: 0 success (feasible), 1 usage or
/// input errors, 2 infeasible instance, 3 oracle gap above --max-gap,
/// 4 internal solver errors.
int run_cli(int argc, const char* const* argv);

}  // namespace speedplan

#endif  // SPEEDPLAN_CLI_HPP_
