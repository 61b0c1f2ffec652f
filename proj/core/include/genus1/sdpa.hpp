#pragma once

#include <iosfwd>
#include <string>

#include "genus1/sdp.hpp"

namespace genus1 {

// SDPA sparse format for "A0 + sum_i z_i A_i >= 0". SDPA states its
// constraint as sum_i z_i F_i - F0 >= 0, so the constant block is written
// negated (F0 = -A0). A single block is emitted; entries are upper-triangle
// (i <= j), 1-based, ordered by matrix number then row-major.

std::string write_sdpa(const PencilProblem& problem);
void write_sdpa(std::ostream& out, const PencilProblem& problem);

/// Parses the single-block subset produced by write_sdpa (comments starting
/// with '"' or '*' are skipped). Throws ParseError.
PencilProblem read_sdpa(std::istream& in);
PencilProblem read_sdpa_string(const std::string& text);

}  // namespace genus1
