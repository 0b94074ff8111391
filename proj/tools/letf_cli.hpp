#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace letf {

// args excludes the program name. Returns 0 (ok/valid), 1 (negative verdict)
// or 2 (usage, format or input error).
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace letf
