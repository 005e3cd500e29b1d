#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace kvol::cli {

/// Runs the command line. Returns 0 on success, 1 on a computational error,
/// 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct CheckOutcome {
    std::string name;
    bool pass;
    std::string detail;
};

/// The identity suite behind `verify`.
std::vector<CheckOutcome> identity_suite();

}  // namespace kvol::cli
