#include "frugal/harness.hpp"

#include "frugal/baselines.hpp"
#include "frugal/csv.hpp"
#include "frugal/errors.hpp"
#include "frugal/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

namespace frugal {

namespace {

ConfusionMatrix::Rate ratio(long numerator, long denominator) {
    ConfusionMatrix::Rate rate;
    if (denominator > 0) {
        rate.value = static_cast<double>(numerator) / static_cast<double>(denominator);
        rate.defined = true;
    }
    return rate;
}

} // namespace

void ConfusionMatrix::add(Label predicted, int truth) {
    if (truth == 1)
        (predicted == Label::Positive ? tp : fn)++;
    else
        (predicted == Label::Positive ? fp : tn)++;
}

ConfusionMatrix::Rate ConfusionMatrix::accuracy() const { return ratio(tp + tn, total()); }
ConfusionMatrix::Rate ConfusionMatrix::sensitivity() const { return ratio(tp, tp + fn); }
ConfusionMatrix::Rate ConfusionMatrix::specificity() const { return ratio(tn, tn + fp); }
ConfusionMatrix::Rate ConfusionMatrix::ppv() const { return ratio(tp, tp + fp); }
ConfusionMatrix::Rate ConfusionMatrix::npv() const { return ratio(tn, tn + fn); }
ConfusionMatrix::Rate ConfusionMatrix::false_negative_rate() const { return ratio(fn, tp + fn); }
ConfusionMatrix::Rate ConfusionMatrix::false_alarm_rate() const { return ratio(fp, fp + tn); }

ConfusionMatrix::Rate ConfusionMatrix::balanced_accuracy() const {
    const Rate sens = sensitivity();
    const Rate spec = specificity();
    Rate rate;
    if (sens.defined && spec.defined) {
        rate.value = 0.5 * (sens.value + spec.value);
        rate.defined = true;
    }
    return rate;
}

ConfusionMatrix confusion_of(const std::vector<Label>& predictions, const std::vector<int>& truth) {
    if (predictions.empty()) throw PreconditionError("confusion_of needs at least one prediction");
    if (predictions.size() != truth.size())
        throw PreconditionError("got " + std::to_string(predictions.size()) + " predictions for " +
                                std::to_string(truth.size()) + " truth labels");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < predictions.size(); ++i) cm.add(predictions[i], truth[i]);
    return cm;
}

void StrategySpec::validate() {
    static const std::set<std::string> kinds{"ttb", "tallying", "fft", "threshold", "linear", "logistic"};
    if (!kinds.count(kind)) throw SchemaError("unknown strategy kind '" + kind + "'");
    costs.validate();
    if (kind == "ttb" || kind == "tallying") {
        task = TaskKind::PairedComparison;
    } else if (kind == "fft" || kind == "threshold") {
        task = TaskKind::Classification;
    }
    if (name.empty()) name = kind;
}

std::vector<StrategySpec> parse_strategies(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("strategy JSON malformed: ") + e.what());
    }
    if (!doc.is_array() || doc.empty())
        throw SchemaError("strategy JSON must be a nonempty array of strategy objects");

    static const std::set<std::string> known_keys{"name", "kind",    "task",    "ordering",
                                                  "exit", "depth",   "cost_fn", "cost_fp",
                                                  "cue"};
    std::vector<StrategySpec> strategies;
    std::set<std::string> names;
    for (const auto& entry : doc) {
        if (!entry.is_object()) throw SchemaError("each strategy must be a JSON object");
        for (const auto& [key, value] : entry.items())
            if (!known_keys.count(key)) throw SchemaError("unknown strategy key '" + key + "'");
        StrategySpec spec;
        if (!entry.contains("kind") || !entry["kind"].is_string())
            throw SchemaError("strategy object needs a string 'kind'");
        spec.kind = entry["kind"].get<std::string>();
        if (entry.contains("name")) spec.name = entry["name"].get<std::string>();
        if (entry.contains("task")) {
            const auto task = entry["task"].get<std::string>();
            if (task == "classification")
                spec.task = TaskKind::Classification;
            else if (task == "paired")
                spec.task = TaskKind::PairedComparison;
            else
                throw SchemaError("unknown task '" + task + "'; expected classification or paired");
            if ((spec.kind == "ttb" || spec.kind == "tallying") && task != "paired")
                throw SchemaError(spec.kind + " only supports the paired task");
            if ((spec.kind == "fft" || spec.kind == "threshold") && task != "classification")
                throw SchemaError(spec.kind + " only supports the classification task");
        }
        if (entry.contains("ordering")) {
            const auto ordering = entry["ordering"].get<std::string>();
            if (ordering == "validity")
                spec.ordering = OrderingRule::ByValidity;
            else if (ordering == "maxpv")
                spec.ordering = OrderingRule::ByMaxPredictiveValue;
            else
                throw SchemaError("unknown ordering '" + ordering + "'; expected validity or maxpv");
        }
        if (entry.contains("exit")) {
            const auto exit = entry["exit"].get<std::string>();
            if (exit == "zigzag")
                spec.exit_policy = ExitPolicy::Zigzag;
            else if (exit == "max")
                spec.exit_policy = ExitPolicy::MaxSide;
            else
                throw SchemaError("unknown exit policy '" + exit + "'; expected zigzag or max");
        }
        if (entry.contains("depth")) spec.depth = entry["depth"].get<int>();
        if (entry.contains("cost_fn")) spec.costs.cost_fn = entry["cost_fn"].get<double>();
        if (entry.contains("cost_fp")) spec.costs.cost_fp = entry["cost_fp"].get<double>();
        if (entry.contains("cue")) spec.threshold_cue = entry["cue"].get<std::string>();
        spec.validate();
        if (!names.insert(spec.name).second)
            throw SchemaError("duplicate strategy name '" + spec.name +
                              "'; give variants explicit names");
        strategies.push_back(std::move(spec));
    }
    return strategies;
}

SimSpec parse_sim_spec(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("simulation spec JSON malformed: ") + e.what());
    }
    if (!doc.is_object()) throw SchemaError("simulation spec must be a JSON object");
    static const std::set<std::string> known_keys{"n_objects", "n_cues", "weight_profile",
                                                  "redundancy", "noise", "seed"};
    for (const auto& [key, value] : doc.items())
        if (!known_keys.count(key)) throw SchemaError("unknown simulation spec key '" + key + "'");
    SimSpec spec;
    if (doc.contains("n_objects")) spec.n_objects = doc["n_objects"].get<int>();
    if (doc.contains("n_cues")) spec.n_cues = doc["n_cues"].get<int>();
    if (doc.contains("weight_profile")) {
        const auto profile = doc["weight_profile"].get<std::string>();
        if (profile == "noncompensatory")
            spec.weight_profile = WeightProfile::Noncompensatory;
        else if (profile == "uniform")
            spec.weight_profile = WeightProfile::Uniform;
        else
            throw SchemaError("unknown weight_profile '" + profile +
                              "'; expected noncompensatory or uniform");
    }
    if (doc.contains("redundancy")) spec.redundancy = doc["redundancy"].get<double>();
    if (doc.contains("noise")) spec.noise = doc["noise"].get<double>();
    if (doc.contains("seed")) spec.seed = doc["seed"].get<std::uint64_t>();
    spec.validate();
    return spec;
}

namespace {

// Classification-task evaluation: a fitted classifier is a label+consulted
// function over environment rows.
struct FittedClassifier {
    std::function<ClassificationOutcome(const Environment&, Eigen::Index)> classify;
};

FittedClassifier fit_classifier(const StrategySpec& strategy, const Environment& train) {
    if (strategy.kind == "fft") {
        const int depth = strategy.depth > 0 ? strategy.depth : static_cast<int>(train.n_cues());
        FastFrugalTree tree = build_fft(train, strategy.ordering, strategy.exit_policy, depth,
                                        strategy.costs);
        return {[tree](const Environment& env, Eigen::Index row) {
            return fft_classify(tree, env, row);
        }};
    }
    if (strategy.kind == "threshold") {
        Eigen::Index cue;
        if (!strategy.threshold_cue.empty()) {
            cue = train.cue_index(strategy.threshold_cue);
        } else {
            const auto stats = compute_cue_stats(train);
            cue = order_cues(stats, OrderingRule::ByValidity).entries.front().first;
        }
        const auto [threshold, cmp] = binarize_cue(train, cue);
        const Polarity polarity = cmp == Comparison::GreaterEqual ? Polarity::AboveIsPositive
                                                                  : Polarity::BelowIsPositive;
        return {[cue, threshold = threshold, polarity](const Environment& env, Eigen::Index row) {
            ClassificationOutcome out;
            out.label = threshold_classify(env.values(row, cue), threshold, polarity);
            out.exit_depth = 1;
            out.cues_consulted = 1;
            return out;
        }};
    }
    if (strategy.kind == "linear") {
        const LinearModel model = fit_linear(train);
        const int all_cues = static_cast<int>(train.n_cues());
        return {[model, all_cues](const Environment& env, Eigen::Index row) {
            ClassificationOutcome out;
            const double score = predict_score(model, env.values.row(row).transpose());
            out.label = score >= 0.5 ? Label::Positive : Label::Negative;
            out.exit_depth = all_cues;
            out.cues_consulted = all_cues;
            return out;
        }};
    }
    if (strategy.kind == "logistic") {
        const LogisticModel model = fit_logistic(train);
        const int all_cues = static_cast<int>(train.n_cues());
        return {[model, all_cues](const Environment& env, Eigen::Index row) {
            ClassificationOutcome out;
            const double score = predict_score(model, env.values.row(row).transpose());
            out.label = score >= 0.5 ? Label::Positive : Label::Negative;
            out.exit_depth = all_cues;
            out.cues_consulted = all_cues;
            return out;
        }};
    }
    throw PreconditionError("strategy kind '" + strategy.kind + "' cannot run classification");
}

// Paired-comparison evaluation: a fitted comparator picks one object of an
// unequal-criterion pair and reports the cues it consulted.
struct FittedComparator {
    std::function<InferenceOutcome(const Environment&, Eigen::Index, Eigen::Index, std::uint64_t)>
        compare;
};

FittedComparator fit_comparator(const StrategySpec& strategy, const Environment& train) {
    if (strategy.kind == "ttb") {
        const CueOrder order = order_cues(compute_cue_stats(train), strategy.ordering);
        return {[order](const Environment& env, Eigen::Index a, Eigen::Index b, std::uint64_t tie_seed) {
            return ttb_compare(env, order, a, b, tie_seed);
        }};
    }
    if (strategy.kind == "tallying") {
        std::vector<Eigen::Index> subset(static_cast<std::size_t>(train.n_cues()));
        for (Eigen::Index j = 0; j < train.n_cues(); ++j) subset[static_cast<std::size_t>(j)] = j;
        return {[subset](const Environment& env, Eigen::Index a, Eigen::Index b, std::uint64_t tie_seed) {
            return tallying_compare(env, subset, a, b, tie_seed);
        }};
    }
    if (strategy.kind == "linear" || strategy.kind == "logistic") {
        std::function<double(const Environment&, Eigen::Index)> score;
        if (strategy.kind == "linear") {
            const LinearModel model = fit_linear(train);
            score = [model](const Environment& env, Eigen::Index row) {
                return predict_score(model, env.values.row(row).transpose());
            };
        } else {
            const LogisticModel model = fit_logistic(train);
            score = [model](const Environment& env, Eigen::Index row) {
                return predict_score(model, env.values.row(row).transpose());
            };
        }
        const int all_cues = static_cast<int>(train.n_cues());
        return {[score, all_cues](const Environment& env, Eigen::Index a, Eigen::Index b,
                                  std::uint64_t tie_seed) {
            InferenceOutcome out;
            const double score_a = score(env, a);
            const double score_b = score(env, b);
            out.cues_consulted = all_cues;
            if (score_a == score_b) {
                out.choice = Choice::Guess;
                out.resolved = Rng(tie_seed).coin() ? Choice::A : Choice::B;
                return out;
            }
            out.choice = score_a > score_b ? Choice::A : Choice::B;
            out.resolved = out.choice;
            out.deciding_cue = all_cues - 1;
            return out;
        }};
    }
    throw PreconditionError("strategy kind '" + strategy.kind + "' cannot run paired comparison");
}

// One side (train or test) of a classification evaluation.
ConfusionMatrix run_classification(const FittedClassifier& classifier, const Environment& env,
                                   double* mean_consulted) {
    ConfusionMatrix cm;
    double consulted = 0.0;
    for (Eigen::Index i = 0; i < env.n_objects(); ++i) {
        const ClassificationOutcome out = classifier.classify(env, i);
        cm.add(out.label, env.criterion(i));
        consulted += out.cues_consulted;
    }
    if (mean_consulted) *mean_consulted = consulted / static_cast<double>(env.n_objects());
    return cm;
}

// One side of a paired-comparison evaluation.  Pairs are the unordered
// unequal-criterion pairs (i < j); the pair counts as positive when its first
// object is the criterion-positive one, and the prediction is positive when
// the comparator picks that first object.  Each pair's tie coin comes from
// mix_seed(phase_seed, pair index).
ConfusionMatrix run_paired(const FittedComparator& comparator, const Environment& env,
                           std::uint64_t phase_seed, double* mean_consulted) {
    ConfusionMatrix cm;
    double consulted = 0.0;
    std::uint64_t pair_index = 0;
    for (Eigen::Index i = 0; i < env.n_objects(); ++i) {
        for (Eigen::Index j = i + 1; j < env.n_objects(); ++j) {
            if (env.criterion(i) == env.criterion(j)) continue;
            const std::uint64_t tie_seed = mix_seed(phase_seed, pair_index++);
            const InferenceOutcome out = comparator.compare(env, i, j, tie_seed);
            const Label predicted = out.resolved == Choice::A ? Label::Positive : Label::Negative;
            cm.add(predicted, env.criterion(i));
            consulted += out.cues_consulted;
        }
    }
    if (cm.total() == 0)
        throw PreconditionError("no unequal-criterion pairs available for paired comparison");
    if (mean_consulted) *mean_consulted = consulted / static_cast<double>(cm.total());
    return cm;
}

} // namespace

EvaluationResult evaluate_classifier(const StrategySpec& strategy, const Environment& train,
                                     const Environment& test, std::uint64_t run_seed) {
    if (train.n_cues() != test.n_cues())
        throw PreconditionError("train and test disagree on cue count");
    try {
        EvaluationResult result;
        if (strategy.task == TaskKind::Classification) {
            const FittedClassifier classifier = fit_classifier(strategy, train);
            result.train = run_classification(classifier, train, nullptr);
            result.test = run_classification(classifier, test, &result.mean_cues_consulted);
        } else {
            const FittedComparator comparator = fit_comparator(strategy, train);
            result.train = run_paired(comparator, train, mix_seed(run_seed, 1), nullptr);
            result.test = run_paired(comparator, test, mix_seed(run_seed, 2), &result.mean_cues_consulted);
        }
        return result;
    } catch (const Error& e) {
        throw Error("strategy '" + strategy.name + "': " + e.what());
    }
}

namespace {

// FNV-1a over the train-side object ids, chained across replications.
std::uint64_t hash_partition(std::uint64_t running, const Environment& train) {
    std::uint64_t h = running ? running : 1469598103934665603ull;
    for (const auto& id : train.objects) {
        for (const char c : id) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ull;
        }
        h ^= '\n';
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

double round_sig6(double x) {
    if (!std::isfinite(x)) return x;
    return std::stod(csv::format_sig6(x));
}

// Accumulates one strategy's per-replication outcomes.
struct StrategyAccumulator {
    bool failed = false;
    std::string error;
    int reps_completed = 0;
    std::vector<double> pred_accs;
    double fit_acc_sum = 0.0;
    double frugality_sum = 0.0;
    double wall_ms_sum = 0.0;
    double sens_sum = 0.0;
    int sens_count = 0;
    double spec_sum = 0.0;
    int spec_count = 0;
    double bacc_sum = 0.0;
    int bacc_count = 0;
    std::uint64_t partition_hash = 0;
};

BenchmarkReport run_benchmark(const std::function<Environment(std::uint64_t)>& env_for_rep,
                              const std::string& source,
                              const std::vector<StrategySpec>& strategies, int reps,
                              double train_fraction, std::uint64_t master_seed) {
    if (reps < 1) throw PreconditionError("reps must be >= 1");
    if (strategies.empty()) throw PreconditionError("benchmark needs at least one strategy");

    std::vector<StrategyAccumulator> accumulators(strategies.size());
    for (int r = 0; r < reps; ++r) {
        const std::uint64_t rep_seed = mix_seed(master_seed, static_cast<std::uint64_t>(r));
        const Environment env = env_for_rep(mix_seed(rep_seed, 0));
        const SplitPair split = split_environment(env, train_fraction, mix_seed(rep_seed, 1));

        for (std::size_t s = 0; s < strategies.size(); ++s) {
            StrategyAccumulator& acc = accumulators[s];
            if (acc.failed) continue;
            acc.partition_hash = hash_partition(acc.partition_hash, split.train);
            const std::uint64_t run_seed = mix_seed(rep_seed, 2 + static_cast<std::uint64_t>(s));
            try {
                const auto started = std::chrono::steady_clock::now();
                const EvaluationResult result =
                    evaluate_classifier(strategies[s], split.train, split.test, run_seed);
                const auto elapsed = std::chrono::duration<double, std::milli>(
                                         std::chrono::steady_clock::now() - started)
                                         .count();
                ++acc.reps_completed;
                acc.pred_accs.push_back(result.test.accuracy().value);
                acc.fit_acc_sum += result.train.accuracy().value;
                acc.frugality_sum += result.mean_cues_consulted;
                acc.wall_ms_sum += elapsed;
                if (const auto sens = result.test.sensitivity(); sens.defined) {
                    acc.sens_sum += sens.value;
                    ++acc.sens_count;
                }
                if (const auto spec = result.test.specificity(); spec.defined) {
                    acc.spec_sum += spec.value;
                    ++acc.spec_count;
                }
                if (const auto bacc = result.test.balanced_accuracy(); bacc.defined) {
                    acc.bacc_sum += bacc.value;
                    ++acc.bacc_count;
                }
            } catch (const Error& e) {
                acc.failed = true;
                acc.error = e.what();
            }
        }
    }

    BenchmarkReport report;
    report.master_seed = master_seed;
    report.reps = reps;
    report.train_fraction = train_fraction;
    report.source = source;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t s = 0; s < strategies.size(); ++s) {
        const StrategyAccumulator& acc = accumulators[s];
        StrategyResult row;
        row.name = strategies[s].name;
        row.failed = acc.failed;
        row.error = acc.error;
        row.reps_completed = acc.reps_completed;
        row.partition_hash = hex64(acc.partition_hash);
        if (acc.reps_completed > 0) {
            const double n = acc.reps_completed;
            double mean = 0.0;
            for (const double x : acc.pred_accs) mean += x;
            mean /= n;
            double variance = 0.0;
            for (const double x : acc.pred_accs) variance += (x - mean) * (x - mean);
            const double se = acc.reps_completed > 1
                                  ? std::sqrt(variance / (n - 1.0)) / std::sqrt(n)
                                  : 0.0;
            row.pred_acc = round_sig6(mean);
            row.pred_se = round_sig6(se);
            row.fit_acc = round_sig6(acc.fit_acc_sum / n);
            row.frugality = round_sig6(acc.frugality_sum / n);
            row.wall_ms = round_sig6(acc.wall_ms_sum / n);
            row.sens = acc.sens_count ? round_sig6(acc.sens_sum / acc.sens_count) : nan;
            row.spec = acc.spec_count ? round_sig6(acc.spec_sum / acc.spec_count) : nan;
            row.balanced_acc = acc.bacc_count ? round_sig6(acc.bacc_sum / acc.bacc_count) : nan;
        } else {
            row.fit_acc = row.pred_acc = row.pred_se = row.frugality = nan;
            row.sens = row.spec = row.balanced_acc = row.wall_ms = nan;
        }
        report.strategies.push_back(std::move(row));
    }
    return report;
}

} // namespace

BenchmarkReport cross_validate(const Environment& env, const std::vector<StrategySpec>& strategies,
                               int reps, double train_fraction, std::uint64_t master_seed) {
    env.validate();
    return run_benchmark([&env](std::uint64_t) { return env; }, "environment", strategies, reps,
                         train_fraction, master_seed);
}

BenchmarkReport cross_validate(const SimSpec& sim, const std::vector<StrategySpec>& strategies,
                               int reps, double train_fraction, std::uint64_t master_seed) {
    sim.validate();
    return run_benchmark(
        [&sim](std::uint64_t rep_seed) {
            SimSpec fresh = sim;
            fresh.seed = rep_seed;
            return simulate_environment(fresh);
        },
        "simulation", strategies, reps, train_fraction, master_seed);
}

std::vector<LessIsMoreFinding> less_is_more_probe(const BenchmarkReport& report) {
    std::vector<const StrategyResult*> usable;
    for (const auto& row : report.strategies)
        if (!row.failed && row.reps_completed > 0) usable.push_back(&row);
    if (usable.size() < 2)
        throw PreconditionError("less-is-more probe needs at least 2 evaluated strategies");

    std::vector<LessIsMoreFinding> findings;
    for (const auto* a : usable) {
        for (const auto* b : usable) {
            if (a == b || !(a->frugality < b->frugality)) continue;
            LessIsMoreFinding finding;
            finding.frugal = a->name;
            finding.greedy = b->name;
            finding.accuracy_gap = a->pred_acc - b->pred_acc;
            finding.se_gap = std::sqrt(a->pred_se * a->pred_se + b->pred_se * b->pred_se);
            if (finding.accuracy_gap > 2.0 * finding.se_gap)
                finding.verdict = "less_is_more";
            else if (finding.accuracy_gap < -2.0 * finding.se_gap)
                finding.verdict = "more_is_more";
            else
                finding.verdict = "less_is_equal";
            findings.push_back(std::move(finding));
        }
    }
    return findings;
}

namespace {

std::string render(double value) {
    if (std::isnan(value)) return "nan";
    return csv::format_sig6(value);
}

double emitted_wall_ms(const BenchmarkReport& report, const StrategyResult& row) {
    if (!report.include_timings) return std::isnan(row.wall_ms) ? row.wall_ms : 0.0;
    return row.wall_ms;
}

} // namespace

std::string report_to_csv(const BenchmarkReport& report) {
    std::ostringstream out;
    out << "strategy,fit_acc,pred_acc,pred_se,frugality,sens,spec,wall_ms\n";
    for (const auto& row : report.strategies) {
        out << row.name << ',' << render(row.fit_acc) << ',' << render(row.pred_acc) << ','
            << render(row.pred_se) << ',' << render(row.frugality) << ',' << render(row.sens) << ','
            << render(row.spec) << ',' << render(emitted_wall_ms(report, row)) << '\n';
    }
    return out.str();
}

namespace {

nlohmann::ordered_json json_number(double value) {
    if (std::isnan(value)) return nullptr;
    return value;
}

double number_or_nan(const nlohmann::ordered_json& value) {
    if (value.is_null()) return std::numeric_limits<double>::quiet_NaN();
    return value.get<double>();
}

} // namespace

std::string report_to_json(const BenchmarkReport& report) {
    nlohmann::ordered_json doc;
    doc["master_seed"] = report.master_seed;
    doc["reps"] = report.reps;
    doc["train_fraction"] = round_sig6(report.train_fraction);
    doc["source"] = report.source;
    doc["strategies"] = nlohmann::ordered_json::array();
    for (const auto& row : report.strategies) {
        nlohmann::ordered_json entry;
        entry["strategy"] = row.name;
        entry["failed"] = row.failed;
        if (row.failed) entry["error"] = row.error;
        entry["reps_completed"] = row.reps_completed;
        entry["fit_acc"] = json_number(row.fit_acc);
        entry["pred_acc"] = json_number(row.pred_acc);
        entry["pred_se"] = json_number(row.pred_se);
        entry["frugality"] = json_number(row.frugality);
        entry["balanced_acc"] = json_number(row.balanced_acc);
        entry["sens"] = json_number(row.sens);
        entry["spec"] = json_number(row.spec);
        entry["wall_ms"] = json_number(emitted_wall_ms(report, row));
        entry["partition_hash"] = row.partition_hash;
        doc["strategies"].push_back(std::move(entry));
    }
    return doc.dump(2) + "\n";
}

BenchmarkReport report_from_json(const std::string& text) {
    nlohmann::ordered_json doc;
    try {
        doc = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("report JSON malformed: ") + e.what());
    }
    BenchmarkReport report;
    try {
        report.master_seed = doc.at("master_seed").get<std::uint64_t>();
        report.reps = doc.at("reps").get<int>();
        report.train_fraction = doc.at("train_fraction").get<double>();
        report.source = doc.at("source").get<std::string>();
        for (const auto& entry : doc.at("strategies")) {
            StrategyResult row;
            row.name = entry.at("strategy").get<std::string>();
            row.failed = entry.at("failed").get<bool>();
            if (entry.contains("error")) row.error = entry["error"].get<std::string>();
            row.reps_completed = entry.at("reps_completed").get<int>();
            row.fit_acc = number_or_nan(entry.at("fit_acc"));
            row.pred_acc = number_or_nan(entry.at("pred_acc"));
            row.pred_se = number_or_nan(entry.at("pred_se"));
            row.frugality = number_or_nan(entry.at("frugality"));
            row.balanced_acc = number_or_nan(entry.at("balanced_acc"));
            row.sens = number_or_nan(entry.at("sens"));
            row.spec = number_or_nan(entry.at("spec"));
            row.wall_ms = number_or_nan(entry.at("wall_ms"));
            row.partition_hash = entry.at("partition_hash").get<std::string>();
            report.strategies.push_back(std::move(row));
        }
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("report JSON missing fields: ") + e.what());
    }
    // Round-trip note: emitted reports already render timings per
    // include_timings, so a parsed report re-emits identically with the flag
    // set (values pass through).
    report.include_timings = true;
    return report;
}

void emit_report(const BenchmarkReport& report, ReportFormat format, const std::string& path) {
    const std::string payload =
        format == ReportFormat::Csv ? report_to_csv(report) : report_to_json(report);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open file for writing: " + path);
    out << payload;
    if (!out) throw Error("write failed: " + path);
}

} // namespace frugal
