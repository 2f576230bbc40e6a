#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gwexcess::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_usage = 1,
  exit_inadmissible = 2,
  exit_incomplete = 3,
  exit_failed = 4,
  exit_budget = 5,
};

// args excludes the program name. "-" as an input path reads `in`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in);

}  // namespace gwexcess::cli
