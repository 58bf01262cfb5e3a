#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace smullyan {

// args excludes the program name. Returns 0 on success or when the checked
// statement holds, 1 when it is refuted or the two sides differ, 2 on usage
// and validation errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace smullyan
