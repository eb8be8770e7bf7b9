#pragma once

#include <string>
#include <vector>

#include "hmom/hankel.hpp"

namespace hmom {

// {"q", "alpha", "beta", "moments": [q x q arrays of [re, im]], "tolerances"?}
MomentSequence parse_sequence_document(const std::string& text);
MomentSequence parse_sequence_document(const std::string& text, const Tolerances& defaults);
std::string serialize_sequence(const MomentSequence& seq);

// Accepts a single q x q matrix, an array of them, or {"matrices": [...]}.
std::vector<CMatrix> parse_matrix_list(const std::string& text, int q);

}  // namespace hmom
