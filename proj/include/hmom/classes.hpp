#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hmom/hankel.hpp"

namespace hmom {

// Raw transformed moments; each returns an empty list when the sequence is too short.
std::vector<CMatrix> alpha_moments(const MomentSequence& seq);  // -α s_j + s_{j+1}
std::vector<CMatrix> beta_moments(const MomentSequence& seq);   // β s_j - s_{j+1}
std::vector<CMatrix> ab_moments(const MomentSequence& seq);     // -αβ s_j + (α+β) s_{j+1} - s_{j+2}

// Magnitude bound for moments after `degree` of the transforms above.
double transform_scale(const MomentSequence& seq, int degree);

MomentSequence alpha_transform(const MomentSequence& seq);  // needs m >= 1
MomentSequence beta_transform(const MomentSequence& seq);   // needs m >= 1
MomentSequence ab_transform(const MomentSequence& seq);     // needs m >= 2

struct DerivedSequences {
  std::optional<MomentSequence> s_alpha, s_beta, s_c;
  MomentSequence r;
};

DerivedSequences derive(const MomentSequence& seq);

// r_j = (-1)^j s_j on [-β, -α].
MomentSequence reflect_class_dual(const MomentSequence& seq);

ClassVerdict is_hankel_nnd(const MomentSequence& seq, int n);
ClassVerdict is_hankel_pd(const MomentSequence& seq, int n);
ClassVerdict is_hankel_nnd_extendable(const MomentSequence& seq);

ClassVerdict is_F_nnd(const MomentSequence& seq);
ClassVerdict is_F_pd(const MomentSequence& seq);

ClassVerdict is_K_nnd(const MomentSequence& seq);
ClassVerdict is_L_nnd(const MomentSequence& seq);
ClassVerdict is_K_nnd_extendable(const MomentSequence& seq);
ClassVerdict is_L_nnd_extendable(const MomentSequence& seq);

const std::vector<std::string>& class_names();
ClassVerdict evaluate_class(const MomentSequence& seq, const std::string& name);

struct ClassReport {
  std::map<std::string, ClassVerdict> verdicts;
  // Violated implications between classes; empty when the verdicts are mutually consistent.
  std::vector<std::string> inconsistencies;
  bool consistent() const { return inconsistencies.empty(); }
};

ClassReport class_report(const MomentSequence& seq);

}  // namespace hmom
