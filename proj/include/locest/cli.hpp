#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace locest {

/// Exit codes: 0 success or help, 1 failed check or runtime failure, 2 usage error.
int dispatch(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace locest
