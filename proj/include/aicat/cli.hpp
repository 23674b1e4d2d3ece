#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aicat {

// Runs the command line (argv without the program name).  JSON results go
// to `out`, diagnostics to `err`.  Exit codes: 0 success, 1 evaluation or
// analysis error, 2 usage error, 3 law violation.
//
// Subcommands: run, collect, analyze, lambda, check-laws.  A JSON config
// file (--config) supplies defaults; explicit flags win.  The environment
// variable AICAT_SEED overrides the sweep seed.  Every report embeds the
// effective configuration under "config" and carries "schema":"aicat/1".
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace aicat
