#pragma once

#include "frugal/environment.hpp"
#include "frugal/fft.hpp"
#include "frugal/toolbox.hpp"

namespace frugal {

// Coronary-care admission fixture: seven binary cues (an ST-segment change,
// chest pain as the chief complaint, and five further clinical signs) and the
// three-rule admission policy:
//   (1) ST-segment change -> coronary care (positive);
//   (2) otherwise, chest pain not the chief complaint -> regular bed
//       (negative);
//   (3) otherwise, any one of the five other signs -> coronary care, else
//       regular bed.

inline constexpr int kGreenMehrCueCount = 7;

// Cue order in the fixture: st_change, chest_pain_chief, s1..s5.
const std::vector<CueDefinition>& green_mehr_cues();

// Straight-line transcription of rules (1)-(3).
Label green_mehr_rule(bool st_change, bool chest_pain_chief, bool s1, bool s2, bool s3, bool s4,
                      bool s5);
Label green_mehr_rule(const Eigen::VectorXd& cue_values); // 7 values in fixture order

// All 2^7 cue combinations with the rule-derived criterion; object ids
// p001..p128, criterion column "admit" when serialized.
Environment green_mehr_environment();

// Projects the seven-cue fixture onto the three questions the admission tree
// asks: st_change, chest_pain_chief, any_other_sign (OR of s1..s5).
Environment green_mehr_tree_view(const Environment& env);

// The admission tree, hand-coded over the three-cue view:
//   st_change >= 0.5        -> EXIT(positive)
//   chest_pain_chief < 0.5  -> EXIT(negative)
//   any_other_sign >= 0.5   -> EXIT(positive) ELSE EXIT(negative)
FastFrugalTree green_mehr_tree();

} // namespace frugal
