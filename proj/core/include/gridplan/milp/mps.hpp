#pragma once

#include <string>

#include "gridplan/milp/problem.hpp"

namespace gridplan::milp {

// Free-format MPS with sections NAME, ROWS, COLUMNS (INTORG/INTEND markers
// for binaries), RHS, BOUNDS, ENDATA.  Numbers carry 17 significant digits so
// read(write(p)) is bit-exact.
void write_mps(const Problem& problem, const std::string& path);
std::string to_mps(const Problem& problem);

Problem read_mps(const std::string& path);
Problem parse_mps(const std::string& content, const std::string& origin = "<string>");

}  // namespace gridplan::milp
