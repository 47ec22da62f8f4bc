#pragma once

#include "frugal/environment.hpp"
#include "frugal/fft.hpp"
#include "frugal/simulate.hpp"
#include "frugal/toolbox.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace frugal {

// Four-cell confusion counts plus undefined-guarded derived rates.
struct ConfusionMatrix {
    long tp = 0;
    long fp = 0;
    long tn = 0;
    long fn = 0;

    struct Rate {
        double value = 0.0;
        bool defined = false;
    };

    long total() const { return tp + fp + tn + fn; }
    void add(Label predicted, int truth);

    Rate accuracy() const;            // (tp+tn)/total
    Rate sensitivity() const;         // tp/(tp+fn)
    Rate specificity() const;         // tn/(tn+fp)
    Rate balanced_accuracy() const;   // mean of sensitivity and specificity
    Rate ppv() const;                 // tp/(tp+fp)
    Rate npv() const;                 // tn/(tn+fn)
    Rate false_negative_rate() const; // fn/(tp+fn)
    Rate false_alarm_rate() const;    // fp/(fp+tn)
};

ConfusionMatrix confusion_of(const std::vector<Label>& predictions, const std::vector<int>& truth);

enum class TaskKind { Classification, PairedComparison };

// One benchmarked strategy.  Heuristic comparators (ttb, tallying) always run
// the paired-comparison task; classifiers (fft, threshold) always run
// classification; linear and logistic accept either via `task`.
struct StrategySpec {
    std::string name;        // report row label; defaults to kind
    std::string kind;        // ttb | tallying | fft | threshold | linear | logistic
    TaskKind task = TaskKind::Classification;
    OrderingRule ordering = OrderingRule::ByValidity; // ttb, fft
    ExitPolicy exit_policy = ExitPolicy::MaxSide;     // fft
    int depth = 0;                                    // fft; <= 0 means all cues
    CostRatio costs{1.0, 1.0};                        // fft
    std::string threshold_cue;                        // threshold; empty = best by validity

    // Normalizes defaults and rejects invalid kind/parameter combinations.
    void validate();
};

// Parses a JSON array of strategy objects (the strat.json schema documented
// in the README).  Unknown keys and duplicate names are rejected.
std::vector<StrategySpec> parse_strategies(const std::string& json_text);

// Parses a simulation recipe from JSON ({"n_objects", "n_cues",
// "weight_profile", "redundancy", "noise", "seed"}; every key optional,
// unknown keys rejected).
SimSpec parse_sim_spec(const std::string& json_text);

// Single train/test evaluation of one strategy.
struct EvaluationResult {
    ConfusionMatrix train;
    ConfusionMatrix test;
    double mean_cues_consulted = 0.0; // over test objects (or test pairs)
};

// Fits on train only and evaluates on both sides.  Guesses in paired
// comparisons are resolved by coins derived from run_seed.  Throws with the
// strategy name attached when fitting is impossible.
EvaluationResult evaluate_classifier(const StrategySpec& strategy, const Environment& train,
                                     const Environment& test, std::uint64_t run_seed);

// Aggregated outcome of one strategy across replications.
struct StrategyResult {
    std::string name;
    bool failed = false;
    std::string error;          // first failure message when failed
    int reps_completed = 0;
    double fit_acc = 0.0;
    double pred_acc = 0.0;
    double pred_se = 0.0;       // standard error of pred_acc across reps
    double frugality = 0.0;     // mean cues consulted
    double balanced_acc = 0.0;  // test-side mean (NaN when never defined)
    double sens = 0.0;          // test-side mean (NaN when never defined)
    double spec = 0.0;          // test-side mean (NaN when never defined)
    double wall_ms = 0.0;       // mean per replication
    std::string partition_hash; // hash of every train partition this strategy saw
};

struct BenchmarkReport {
    std::uint64_t master_seed = 0;
    int reps = 0;
    double train_fraction = 0.0;
    std::string source;           // provenance note: file path or simulation recipe
    bool include_timings = false; // emit measured wall_ms instead of 0
    std::vector<StrategyResult> strategies;
};

// Paired-split benchmarking: replication r derives seed_r = mix_seed(master,
// r); every strategy sees the identical train/test partition within a
// replication.  The environment overload resplits one environment; the
// SimSpec overload simulates a fresh environment per replication.  Failed
// strategies are recorded, not fatal.
BenchmarkReport cross_validate(const Environment& env, const std::vector<StrategySpec>& strategies,
                               int reps, double train_fraction, std::uint64_t master_seed);
BenchmarkReport cross_validate(const SimSpec& sim, const std::vector<StrategySpec>& strategies,
                               int reps, double train_fraction, std::uint64_t master_seed);

// Frugal-vs-greedy comparison for every strategy pair with strictly smaller
// mean cues consulted on the frugal side.
struct LessIsMoreFinding {
    std::string frugal;
    std::string greedy;
    std::string verdict;   // less_is_more | less_is_equal | more_is_more
    double accuracy_gap = 0.0; // frugal minus greedy prediction accuracy
    double se_gap = 0.0;       // sqrt(se_frugal^2 + se_greedy^2)
};

std::vector<LessIsMoreFinding> less_is_more_probe(const BenchmarkReport& report);

enum class ReportFormat { Csv, Json };

// Deterministic serialization: CSV rows under the fixed header
// `strategy,fit_acc,pred_acc,pred_se,frugality,sens,spec,wall_ms`, or a JSON
// document carrying the same data plus metadata.  Floats are rendered with 6
// significant digits; wall_ms is 0 unless include_timings is set.
void emit_report(const BenchmarkReport& report, ReportFormat format, const std::string& path);
std::string report_to_csv(const BenchmarkReport& report);
std::string report_to_json(const BenchmarkReport& report);
BenchmarkReport report_from_json(const std::string& text);

} // namespace frugal
