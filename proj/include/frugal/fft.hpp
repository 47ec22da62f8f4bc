#pragma once

#include "frugal/environment.hpp"
#include "frugal/toolbox.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace frugal {

// Per-cue statistics in the paired-comparison sense.  Validity counts only
// unequal-criterion pairs the cue discriminates; discrimination_rate counts
// discriminated pairs over all unordered object pairs.  ppv/npv/hit/fa come
// from the balanced-accuracy binarization of the cue; each carries a defined
// flag (false when its denominator is zero or the environment is
// single-class), and consumers treat undefined values as 0.
struct CueStats {
    int direction = +1;              // declared direction, carried for ordering
    double validity = 0.5;           // 0.5 when no pair is discriminated
    double discrimination_rate = 0.0;
    double ppv = 0.0;
    double npv = 0.0;
    bool ppv_defined = false;
    bool npv_defined = false;
    double hit_rate = 0.0;
    double false_alarm_rate = 0.0;
    bool hit_rate_defined = false;
    bool false_alarm_rate_defined = false;
    bool has_split = false;          // false for constant cues
    double threshold = 0.0;          // valid when has_split
    bool greater_equal = true;       // binarized positive side: value >= threshold (else <)
};

enum class Comparison { GreaterEqual, Less };

// One tree node.  Traversal evaluates `value(cue) cmp threshold`; when the
// condition holds the node exits with exit_if_true.  Non-final nodes continue
// on the false branch; the final node instead exits with exit_if_false, which
// is set on the last node only (the defining double exit).
struct TreeNode {
    Eigen::Index cue = 0;
    double threshold = 0.0;
    Comparison cmp = Comparison::GreaterEqual;
    Label exit_if_true = Label::Positive;
    std::optional<Label> exit_if_false;
};

struct FastFrugalTree {
    std::vector<TreeNode> nodes;

    int depth() const { return static_cast<int>(nodes.size()); }

    // Structural invariants: nonempty, double exit on the last node only,
    // cue indices within [0, n_cues).  Throws SchemaError.
    void validate(Eigen::Index n_cues) const;
};

// Relative misclassification costs used to slant exits.
struct CostRatio {
    double cost_fn = 1.0;
    double cost_fp = 1.0;

    void validate() const; // both strictly positive
};

enum class OrderingRule { ByValidity, ByMaxPredictiveValue };
enum class ExitPolicy { MaxSide, Zigzag };

// Exhaustive pair-enumeration statistics for every cue.  Requires >= 2
// objects; with a single-class criterion the predictive values are flagged
// undefined and validity falls back to the 0.5 convention.
std::vector<CueStats> compute_cue_stats(const Environment& env);

// Balanced-accuracy-optimal split for one cue: scans midpoints of consecutive
// sorted distinct values, breaking ties toward the smaller threshold and
// toward GreaterEqual.  Requires both classes and >= 2 distinct cue values.
std::pair<double, Comparison> binarize_cue(const Environment& env, Eigen::Index cue);

// Descending validity or descending max(ppv, npv) (undefined counts as 0),
// ties broken by ascending cue index.  Directions are the declared ones.
CueOrder order_cues(const std::vector<CueStats>& stats, OrderingRule rule);

// Builds a fast-and-frugal tree: binarize, order, truncate to max_depth.
// max_side gives node k a positive exit iff cost_fn*ppv_k >= cost_fp*npv_k,
// with the predictive values measured on the training objects that reach the
// node; zigzag alternates exits starting from the first cue's larger
// cost-weighted predictive value.  The final node labels each branch with the
// majority label of the training residue reaching it (ties: positive iff
// cost_fn >= cost_fp).  Constant cues are skipped; max_depth beyond the
// usable cue count is clamped with a note appended to `warnings`.
FastFrugalTree build_fft(const Environment& train, OrderingRule ordering, ExitPolicy exit_policy,
                         int max_depth, CostRatio costs, std::vector<std::string>* warnings = nullptr);

// Traverses the tree over a vector of cue values indexed like the source
// environment's cues.  Throws PreconditionError when a referenced cue index
// is outside the vector.
ClassificationOutcome fft_classify(const FastFrugalTree& tree, const Eigen::VectorXd& cue_values);
ClassificationOutcome fft_classify(const FastFrugalTree& tree, const Environment& env, Eigen::Index row);

struct TunedFft {
    FastFrugalTree tree;
    CostRatio chosen;
};

// Builds one tree per candidate cost ratio on `train` and returns the one
// minimizing reference-weighted validation error
// (reference.cost_fn * FN + reference.cost_fp * FP); ties go to the earliest
// candidate.  The reference ratio is caller-supplied because expected costs
// under different candidate ratios are not comparable.
TunedFft tune_fft_cost(const Environment& train, const Environment& validation,
                       const std::vector<CostRatio>& candidates, OrderingRule ordering,
                       ExitPolicy exit_policy, int max_depth, CostRatio reference,
                       std::vector<std::string>* warnings = nullptr);

// Line-oriented text form, one node per line:
//   `cue_name >= threshold -> EXIT(positive)`
// with the final line carrying both exits:
//   `cue_name < threshold -> EXIT(negative) ELSE EXIT(positive)`
// Thresholds use full precision; text -> tree -> text round-trips exactly.
std::string tree_to_text(const FastFrugalTree& tree, const std::vector<CueDefinition>& cues);
FastFrugalTree tree_from_text(const std::string& text, const std::vector<CueDefinition>& cues);

} // namespace frugal
