#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hmom/extensions.hpp"

namespace hmom {

enum class Suite { parallel, recursion, reflection, ranges, ordering, hankel_identities };

std::optional<Suite> parse_suite(const std::string& text);
std::string to_string(Suite s);
const std::vector<Suite>& all_suites();

struct VerifyOptions {
  double identity_tol = 1e-7;   // relative residual of matrix identities
  double order_tol = 1e-8;      // relative negative-eigenvalue slack of Loewner inequalities
  double projector_tol = 1e-6;  // spectral distance between projectors
};

struct Check {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  std::optional<int> worst_index;
  int evaluated = 0;
  bool passed() const { return residual <= tolerance; }
};

struct SuiteReport {
  Suite suite;
  std::vector<Check> checks;
  bool passed() const;
  double max_residual() const;
};

SuiteReport run_suite(const MomentSequence& seq, Suite suite, const VerifyOptions& opt = {});

}  // namespace hmom
