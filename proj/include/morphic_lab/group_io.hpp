#pragma once

// Group files:
//   {"format":"mult-table","name":str,"order":n,"table":[[...],...]}
//   {"format":"perm-gens","name":str,"degree":k,"generators":[[...],...]}
// Malformed files raise kParseError with a byte offset or a JSON path.

#include <string>
#include <string_view>

#include "morphic_lab/group.hpp"

namespace morphic_lab {

FiniteGroup parse_group_json(std::string_view text,
                             const std::string& origin = "<input>");
FiniteGroup load_group_file(const std::string& path);

// Serialises as a mult-table file.
std::string group_to_json(const FiniteGroup& g);

}  // namespace morphic_lab
