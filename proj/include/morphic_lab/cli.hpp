#pragma once

// The morphic-lab command line, callable in-process so tests can drive it
// with string streams.
//
// Exit codes: 0 ok, 1 internal inconsistency, 2 malformed input,
// 3 cap or budget exceeded, 4 unmet precondition.

#include <ostream>
#include <string>
#include <vector>

#include "morphic_lab/error.hpp"
#include "morphic_lab/group.hpp"

namespace morphic_lab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitPrecondition = 4;

int exit_code_for(ErrorCode code);

// A family spec ("heisenberg:3") or a group file path.
FiniteGroup resolve_source(const std::string& source);

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// Text printed by the `formats` verb.
const char* formats_text();

}  // namespace morphic_lab::cli
