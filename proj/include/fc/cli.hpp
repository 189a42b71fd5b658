#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fc/engine.hpp"

namespace fc {

// Canonical JSON rendering: {"Q": [8 strings], "newParams": [5 strings]}.
std::string reduction_result_to_json(const ReductionResult& r);

// Full command-line front end, in-process testable. Args exclude argv[0].
// Exit codes: 0 ok, 2 parse/usage, 3 exceptional parameters, 4 evaluation
// failure. Every failure writes one JSON error object to err.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace fc
