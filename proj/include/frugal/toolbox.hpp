#pragma once

#include "frugal/environment.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace frugal {

enum class Choice { A, B, Guess };
enum class Label { Negative = 0, Positive = 1 };

// An ordering over cues for lexicographic strategies; each entry pairs a cue
// index with the direction applied when reading its values.
struct CueOrder {
    std::vector<std::pair<Eigen::Index, int>> entries;

    // Throws PreconditionError on duplicate or out-of-range indices,
    // directions outside {-1,+1}, or an empty order.
    void validate(const Environment& env) const;
};

// Result of a paired comparison.  `choice` is Guess exactly when no cue (or
// tally) discriminated, in which case `deciding_cue` is absent; `resolved`
// always names a concrete object: it equals `choice` on decided comparisons
// and carries the fair-coin draw on guesses.
struct InferenceOutcome {
    Choice choice = Choice::Guess;
    Choice resolved = Choice::Guess;
    std::optional<Eigen::Index> deciding_cue;
    int cues_consulted = 0;
};

// Result of classifying one object: the label, the 1-based depth of the node
// that exited, and the number of cues read (== exit depth).
struct ClassificationOutcome {
    Label label = Label::Negative;
    int exit_depth = 0;
    int cues_consulted = 0;
};

// Take-the-best: scan cues in order, stop at the first whose direction-
// adjusted values differ between the two objects, choose the higher one.  If
// no cue discriminates the choice is a fair coin drawn from tie_seed, with
// every cue counted as consulted.
InferenceOutcome ttb_compare(const Environment& env, const CueOrder& order, Eigen::Index a,
                             Eigen::Index b, std::uint64_t tie_seed);
InferenceOutcome ttb_compare(const Environment& env, const CueOrder& order, const std::string& a,
                             const std::string& b, std::uint64_t tie_seed);

// Tallying: unit-weight direction-adjusted sums over cue_subset; larger sum
// wins, equal sums guess.  Always consults the whole subset.
InferenceOutcome tallying_compare(const Environment& env, const std::vector<Eigen::Index>& cue_subset,
                                  Eigen::Index a, Eigen::Index b, std::uint64_t tie_seed);
InferenceOutcome tallying_compare(const Environment& env, const std::vector<Eigen::Index>& cue_subset,
                                  const std::string& a, const std::string& b, std::uint64_t tie_seed);

enum class Polarity { AboveIsPositive, BelowIsPositive };

// One-clever-cue classification against a threshold.  The boundary is closed
// on the positive side: value == threshold is positive under
// AboveIsPositive and negative under BelowIsPositive.
Label threshold_classify(double value, double threshold, Polarity polarity);

// Smallest prefix of the descending-score order with size >= ceil(fraction*n),
// extended to include every object tied with the boundary score.
std::vector<std::string> top_fraction_select(const std::map<std::string, double>& scores,
                                             double fraction);

// One option under satisficing: its id and the cue values the thresholds read.
struct SatisficingOption {
    std::string id;
    std::map<std::string, double> values;
};

struct SatisficingResult {
    std::optional<std::string> selected;
    int options_examined = 0;
};

// Returns the first option (in list order) whose every thresholded cue meets
// its minimum; reports how many options were examined before stopping.
SatisficingResult satisficing_select(const std::vector<SatisficingOption>& options,
                                     const std::map<std::string, double>& thresholds);

} // namespace frugal
