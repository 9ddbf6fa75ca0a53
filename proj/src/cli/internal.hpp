// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <variant>

#include "fracbin/cli.hpp"

namespace fracbin::cli {

/// Either a validated config or the exit code to return right away
/// (help output, parse errors).
using ParseOutcome = std::variant<RunConfig, int>;

ParseOutcome parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fracbin::cli
