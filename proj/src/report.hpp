#pragma once

#include <string>
#include <vector>

#include "hmom/extensions.hpp"
#include "hmom/verify.hpp"
#include "json_matrix.hpp"

// Report fragments shared by the C API. Every fragment has the keys
// verdicts, residuals, data and status ("pass" or "fail").
namespace hmom::detail {

json verdict_to_json(const ClassVerdict& v);

json check_report(const MomentSequence& seq, const std::string& require);
json interval_report(const MomentSequence& seq, int m);
json membership_report(const MomentSequence& seq, const CMatrix& candidate);
json verify_report(const MomentSequence& seq, const std::vector<Suite>& suites);
json degenerate_report(const MomentSequence& seq);

}  // namespace hmom::detail
