#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dalg::cli {

// Exit codes: 0 affirmative, 1 negative verdict or failed check, 2 input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dalg::cli
