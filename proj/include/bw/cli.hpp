#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bw {

// Runs one CLI invocation. Returns the process exit code:
//   0  all checks passed
//   1  a mathematical claim was falsified (diagnostics in the report)
//   2  usage error (message on `err`)
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace bw
