#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace yoccoz::cli {

enum Exit : int {
    kOk = 0,
    kInvalid = 1,
    kMalformed = 2,
    kRealizationFailed = 3,
};

/// Runs one command line. args[0] is the program name. Files named "-" read from `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace yoccoz::cli
