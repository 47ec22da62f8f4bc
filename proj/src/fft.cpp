#include "frugal/fft.hpp"

#include "frugal/csv.hpp"
#include "frugal/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace frugal {

void FastFrugalTree::validate(Eigen::Index n_cues) const {
    if (nodes.empty()) throw SchemaError("tree must have at least one node");
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const auto& node = nodes[k];
        if (node.cue < 0 || node.cue >= n_cues)
            throw SchemaError("tree node " + std::to_string(k + 1) + " references cue index " +
                              std::to_string(node.cue) + " outside the environment");
        const bool is_final = k + 1 == nodes.size();
        if (is_final != node.exit_if_false.has_value())
            throw SchemaError(is_final ? "final tree node must exit on both branches"
                                       : "non-final tree node must have exactly one exit");
    }
}

void CostRatio::validate() const {
    if (!(cost_fn > 0.0) || !(cost_fp > 0.0))
        throw PreconditionError("cost ratio components must be positive");
}

namespace {

bool condition_holds(const TreeNode& node, double value) {
    return node.cmp == Comparison::GreaterEqual ? value >= node.threshold : value < node.threshold;
}

Comparison flip(Comparison cmp) {
    return cmp == Comparison::GreaterEqual ? Comparison::Less : Comparison::GreaterEqual;
}

// Balanced accuracy of the split (value >= threshold) given per-class counts
// of objects strictly below the threshold.
double balanced_accuracy_ge(int pos_below, int neg_below, int n_pos, int n_neg) {
    const double sensitivity = static_cast<double>(n_pos - pos_below) / n_pos;
    const double specificity = static_cast<double>(neg_below) / n_neg;
    return 0.5 * (sensitivity + specificity);
}

} // namespace

std::pair<double, Comparison> binarize_cue(const Environment& env, Eigen::Index cue) {
    if (cue < 0 || cue >= env.n_cues())
        throw PreconditionError("cue index " + std::to_string(cue) + " out of range");
    const auto n = env.n_objects();
    const int n_pos = env.criterion.sum();
    const int n_neg = static_cast<int>(n) - n_pos;
    if (n_pos == 0 || n_neg == 0)
        throw PreconditionError("binarization needs both classes in the training data");

    std::vector<std::pair<double, int>> sorted(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) sorted[static_cast<std::size_t>(i)] = {env.values(i, cue), env.criterion(i)};
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front().first == sorted.back().first)
        throw PreconditionError("cue '" + env.cues[static_cast<std::size_t>(cue)].name +
                                "' is constant; no split exists");

    // Walk ascending values maintaining below-threshold class counts; each
    // midpoint between distinct neighbors is a candidate.  The orientation
    // with balanced accuracy below 0.5 is mirrored by flipping the
    // comparison, so both are scored from one scan.
    double best_ba = -1.0;
    double best_threshold = 0.0;
    Comparison best_cmp = Comparison::GreaterEqual;
    int pos_below = 0, neg_below = 0;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j].first == sorted[i].first) {
            if (sorted[j].second == 1)
                ++pos_below;
            else
                ++neg_below;
            ++j;
        }
        if (j == sorted.size()) break;
        const double threshold = 0.5 * (sorted[i].first + sorted[j].first);
        const double ba_ge = balanced_accuracy_ge(pos_below, neg_below, n_pos, n_neg);
        if (ba_ge > best_ba) {
            best_ba = ba_ge;
            best_threshold = threshold;
            best_cmp = Comparison::GreaterEqual;
        }
        if (1.0 - ba_ge > best_ba) {
            best_ba = 1.0 - ba_ge;
            best_threshold = threshold;
            best_cmp = Comparison::Less;
        }
        i = j;
    }
    return {best_threshold, best_cmp};
}

std::vector<CueStats> compute_cue_stats(const Environment& env) {
    env.validate();
    const auto n = env.n_objects();
    const int n_pos = env.criterion.sum();
    const int n_neg = static_cast<int>(n) - n_pos;
    const bool two_classes = n_pos > 0 && n_neg > 0;

    std::vector<CueStats> all;
    for (Eigen::Index j = 0; j < env.n_cues(); ++j) {
        CueStats stats;
        stats.direction = env.cues[static_cast<std::size_t>(j)].direction;

        // Pair enumeration: validity over discriminated unequal-criterion
        // pairs, discrimination rate over all unordered pairs.
        long discriminated_any = 0, discriminated_unequal = 0, correct = 0;
        for (Eigen::Index a = 0; a < n; ++a) {
            for (Eigen::Index b = a + 1; b < n; ++b) {
                const double va = env.values(a, j);
                const double vb = env.values(b, j);
                if (va != vb) ++discriminated_any;
                if (env.criterion(a) == env.criterion(b) || va == vb) continue;
                ++discriminated_unequal;
                const Eigen::Index pos = env.criterion(a) == 1 ? a : b;
                const Eigen::Index neg = pos == a ? b : a;
                const double adjusted = stats.direction * (env.values(pos, j) - env.values(neg, j));
                if (adjusted > 0.0) ++correct;
            }
        }
        const long total_pairs = static_cast<long>(n) * (n - 1) / 2;
        stats.discrimination_rate = static_cast<double>(discriminated_any) / total_pairs;
        stats.validity = discriminated_unequal > 0
                             ? static_cast<double>(correct) / discriminated_unequal
                             : 0.5;

        const double lo = env.values.col(j).minCoeff();
        const double hi = env.values.col(j).maxCoeff();
        if (two_classes && lo != hi) {
            auto [threshold, cmp] = binarize_cue(env, j);
            stats.has_split = true;
            stats.threshold = threshold;
            stats.greater_equal = cmp == Comparison::GreaterEqual;
            int tp = 0, fp = 0, tn = 0, fn = 0;
            for (Eigen::Index i = 0; i < n; ++i) {
                const bool fired = stats.greater_equal ? env.values(i, j) >= threshold
                                                       : env.values(i, j) < threshold;
                if (fired)
                    (env.criterion(i) == 1 ? tp : fp)++;
                else
                    (env.criterion(i) == 1 ? fn : tn)++;
            }
            if (tp + fp > 0) { stats.ppv = static_cast<double>(tp) / (tp + fp); stats.ppv_defined = true; }
            if (tn + fn > 0) { stats.npv = static_cast<double>(tn) / (tn + fn); stats.npv_defined = true; }
            if (tp + fn > 0) { stats.hit_rate = static_cast<double>(tp) / (tp + fn); stats.hit_rate_defined = true; }
            if (fp + tn > 0) { stats.false_alarm_rate = static_cast<double>(fp) / (fp + tn); stats.false_alarm_rate_defined = true; }
        }
        all.push_back(stats);
    }
    return all;
}

CueOrder order_cues(const std::vector<CueStats>& stats, OrderingRule rule) {
    if (stats.empty()) throw PreconditionError("order_cues needs statistics for at least one cue");
    std::vector<Eigen::Index> indices(stats.size());
    for (std::size_t j = 0; j < stats.size(); ++j) indices[j] = static_cast<Eigen::Index>(j);
    auto score = [&](Eigen::Index j) {
        const auto& s = stats[static_cast<std::size_t>(j)];
        if (rule == OrderingRule::ByValidity) return s.validity;
        return std::max(s.ppv_defined ? s.ppv : 0.0, s.npv_defined ? s.npv : 0.0);
    };
    std::stable_sort(indices.begin(), indices.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return score(a) > score(b); });
    CueOrder order;
    for (const Eigen::Index j : indices)
        order.entries.emplace_back(j, stats[static_cast<std::size_t>(j)].direction);
    return order;
}

namespace {

// Cost-weighted side comparison: a positive exit is warranted when avoiding
// false negatives (weighted ppv) outweighs avoiding false positives (weighted
// npv).  Undefined predictive values count as 0.
bool positive_side(double ppv, bool ppv_defined, double npv, bool npv_defined,
                   const CostRatio& costs) {
    const double weighted_ppv = costs.cost_fn * (ppv_defined ? ppv : 0.0);
    const double weighted_npv = costs.cost_fp * (npv_defined ? npv : 0.0);
    return weighted_ppv >= weighted_npv;
}

bool positive_side(const CueStats& stats, const CostRatio& costs) {
    return positive_side(stats.ppv, stats.ppv_defined, stats.npv, stats.npv_defined, costs);
}

// Predictive values of a cue measured on the objects that actually reach a
// node, so that each exit decision reflects the population it will act on.
bool positive_side_on_residue(const std::vector<Eigen::Index>& residue, const Environment& env,
                              Eigen::Index cue, const CueStats& s, const CostRatio& costs) {
    long fired = 0, fired_pos = 0, rest = 0, rest_neg = 0;
    for (const Eigen::Index i : residue) {
        const bool f = s.greater_equal ? env.values(i, cue) >= s.threshold
                                       : env.values(i, cue) < s.threshold;
        if (f) {
            ++fired;
            fired_pos += env.criterion(i);
        } else {
            ++rest;
            rest_neg += 1 - env.criterion(i);
        }
    }
    const double ppv = fired > 0 ? static_cast<double>(fired_pos) / fired : 0.0;
    const double npv = rest > 0 ? static_cast<double>(rest_neg) / rest : 0.0;
    return positive_side(ppv, fired > 0, npv, rest > 0, costs);
}

Label majority_label(const std::vector<Eigen::Index>& rows, const Environment& env,
                     const CostRatio& costs) {
    long positives = 0;
    for (const Eigen::Index i : rows) positives += env.criterion(i);
    const long negatives = static_cast<long>(rows.size()) - positives;
    if (positives > negatives) return Label::Positive;
    if (negatives > positives) return Label::Negative;
    return costs.cost_fn >= costs.cost_fp ? Label::Positive : Label::Negative;
}

} // namespace

FastFrugalTree build_fft(const Environment& train, OrderingRule ordering, ExitPolicy exit_policy,
                         int max_depth, CostRatio costs, std::vector<std::string>* warnings) {
    train.validate();
    costs.validate();
    if (max_depth < 1) throw PreconditionError("max_depth must be >= 1");
    const int n_pos = train.criterion.sum();
    if (n_pos == 0 || n_pos == static_cast<int>(train.n_objects()))
        throw PreconditionError("tree construction needs both classes in the training data");

    const std::vector<CueStats> stats = compute_cue_stats(train);
    const CueOrder order = order_cues(stats, ordering);

    // Constant cues carry no split and cannot form a node.
    std::vector<Eigen::Index> usable;
    for (const auto& [index, direction] : order.entries)
        if (stats[static_cast<std::size_t>(index)].has_split) usable.push_back(index);
    if (usable.empty()) throw PreconditionError("no cue admits a split; all cues are constant");

    int depth = max_depth;
    if (depth > static_cast<int>(usable.size())) {
        depth = static_cast<int>(usable.size());
        if (warnings)
            warnings->push_back("max_depth " + std::to_string(max_depth) + " clamped to " +
                                std::to_string(depth) + " usable cues");
    }

    // Zigzag fixes the whole side pattern up front: the first cue's larger
    // cost-weighted predictive value picks the opening side, then sides
    // alternate.  Max-side decides each node on the residue it receives, so
    // its sides are resolved inside the construction loop below.
    std::vector<bool> zigzag_positive(static_cast<std::size_t>(depth));
    if (exit_policy == ExitPolicy::Zigzag) {
        bool side = positive_side(stats[static_cast<std::size_t>(usable[0])], costs);
        for (int k = 0; k < depth; ++k) {
            zigzag_positive[static_cast<std::size_t>(k)] = side;
            side = !side;
        }
    }

    FastFrugalTree tree;
    std::vector<Eigen::Index> residue(static_cast<std::size_t>(train.n_objects()));
    for (Eigen::Index i = 0; i < train.n_objects(); ++i) residue[static_cast<std::size_t>(i)] = i;

    for (int k = 0; k < depth; ++k) {
        const Eigen::Index cue = usable[static_cast<std::size_t>(k)];
        const auto& s = stats[static_cast<std::size_t>(cue)];
        const Comparison fire_cmp = s.greater_equal ? Comparison::GreaterEqual : Comparison::Less;

        TreeNode node;
        node.cue = cue;
        node.threshold = s.threshold;

        const bool is_final = k + 1 == depth;
        if (is_final) {
            // Double exit: each branch takes the majority label of the
            // residue it receives; the node condition keeps the cue's fired
            // orientation.
            std::vector<Eigen::Index> fired, not_fired;
            for (const Eigen::Index i : residue) {
                const bool f = s.greater_equal ? train.values(i, cue) >= s.threshold
                                               : train.values(i, cue) < s.threshold;
                (f ? fired : not_fired).push_back(i);
            }
            node.cmp = fire_cmp;
            node.exit_if_true = majority_label(fired, train, costs);
            node.exit_if_false = majority_label(not_fired, train, costs);
        } else {
            const bool exit_positive =
                exit_policy == ExitPolicy::MaxSide
                    ? positive_side_on_residue(residue, train, cue, s, costs)
                    : zigzag_positive[static_cast<std::size_t>(k)];
            if (exit_positive) {
                // Exit on the fired side with a positive label.
                node.cmp = fire_cmp;
                node.exit_if_true = Label::Positive;
            } else {
                // Exit on the complement side with a negative label.
                node.cmp = flip(fire_cmp);
                node.exit_if_true = Label::Negative;
            }
        }
        tree.nodes.push_back(node);

        if (!is_final) {
            std::vector<Eigen::Index> surviving;
            for (const Eigen::Index i : residue)
                if (!condition_holds(node, train.values(i, cue))) surviving.push_back(i);
            residue = std::move(surviving);
        }
    }
    tree.validate(train.n_cues());
    return tree;
}

ClassificationOutcome fft_classify(const FastFrugalTree& tree, const Eigen::VectorXd& cue_values) {
    if (tree.nodes.empty()) throw PreconditionError("empty tree");
    for (std::size_t k = 0; k < tree.nodes.size(); ++k) {
        const auto& node = tree.nodes[k];
        if (node.cue < 0 || node.cue >= cue_values.size())
            throw PreconditionError("tree references cue index " + std::to_string(node.cue) +
                                    " but only " + std::to_string(cue_values.size()) +
                                    " cue values were supplied");
        const bool holds = condition_holds(node, cue_values(node.cue));
        const int depth = static_cast<int>(k) + 1;
        if (holds) {
            ClassificationOutcome out;
            out.label = node.exit_if_true;
            out.exit_depth = depth;
            out.cues_consulted = depth;
            return out;
        }
        if (node.exit_if_false.has_value()) {
            ClassificationOutcome out;
            out.label = *node.exit_if_false;
            out.exit_depth = depth;
            out.cues_consulted = depth;
            return out;
        }
    }
    throw SchemaError("tree traversal fell off the final node; tree invariants violated");
}

ClassificationOutcome fft_classify(const FastFrugalTree& tree, const Environment& env, Eigen::Index row) {
    if (row < 0 || row >= env.n_objects()) throw PreconditionError("row index out of range");
    return fft_classify(tree, env.values.row(row).transpose());
}

TunedFft tune_fft_cost(const Environment& train, const Environment& validation,
                       const std::vector<CostRatio>& candidates, OrderingRule ordering,
                       ExitPolicy exit_policy, int max_depth, CostRatio reference,
                       std::vector<std::string>* warnings) {
    if (candidates.empty()) throw PreconditionError("tune_fft_cost needs at least one candidate ratio");
    if (validation.n_objects() == 0) throw PreconditionError("validation environment is empty");
    reference.validate();

    std::optional<TunedFft> best;
    double best_cost = std::numeric_limits<double>::infinity();
    for (const auto& candidate : candidates) {
        FastFrugalTree tree = build_fft(train, ordering, exit_policy, max_depth, candidate, warnings);
        long fn = 0, fp = 0;
        for (Eigen::Index i = 0; i < validation.n_objects(); ++i) {
            const Label predicted = fft_classify(tree, validation, i).label;
            if (predicted == Label::Negative && validation.criterion(i) == 1) ++fn;
            if (predicted == Label::Positive && validation.criterion(i) == 0) ++fp;
        }
        const double weighted = reference.cost_fn * static_cast<double>(fn) +
                                reference.cost_fp * static_cast<double>(fp);
        if (weighted < best_cost) {
            best_cost = weighted;
            best = TunedFft{std::move(tree), candidate};
        }
    }
    return *best;
}

namespace {

std::string label_text(Label label) {
    return label == Label::Positive ? "positive" : "negative";
}

Label label_from_text(const std::string& text) {
    if (text == "positive") return Label::Positive;
    if (text == "negative") return Label::Negative;
    throw ParseError("unknown label '" + text + "'; expected positive or negative");
}

} // namespace

std::string tree_to_text(const FastFrugalTree& tree, const std::vector<CueDefinition>& cues) {
    tree.validate(static_cast<Eigen::Index>(cues.size()));
    std::ostringstream out;
    for (const auto& node : tree.nodes) {
        out << cues[static_cast<std::size_t>(node.cue)].name << ' '
            << (node.cmp == Comparison::GreaterEqual ? ">=" : "<") << ' '
            << csv::format_exact(node.threshold) << " -> EXIT(" << label_text(node.exit_if_true) << ')';
        if (node.exit_if_false.has_value())
            out << " ELSE EXIT(" << label_text(*node.exit_if_false) << ')';
        out << '\n';
    }
    return out.str();
}

FastFrugalTree tree_from_text(const std::string& text, const std::vector<CueDefinition>& cues) {
    FastFrugalTree tree;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string name, op, threshold_text, arrow, exit_true;
        if (!(fields >> name >> op >> threshold_text >> arrow >> exit_true) || arrow != "->")
            throw ParseError("malformed tree node at line " + std::to_string(line_no) + ": '" + line + "'");

        TreeNode node;
        bool found = false;
        for (std::size_t j = 0; j < cues.size(); ++j)
            if (cues[j].name == name) { node.cue = static_cast<Eigen::Index>(j); found = true; }
        if (!found) throw SchemaError("tree references unknown cue '" + name + "' at line " + std::to_string(line_no));

        if (op == ">=")
            node.cmp = Comparison::GreaterEqual;
        else if (op == "<")
            node.cmp = Comparison::Less;
        else
            throw ParseError("unknown comparison '" + op + "' at line " + std::to_string(line_no));
        node.threshold = csv::parse_double(threshold_text, line_no, "threshold");

        auto parse_exit = [&](const std::string& token) {
            if (token.size() < 6 || token.substr(0, 5) != "EXIT(" || token.back() != ')')
                throw ParseError("malformed exit '" + token + "' at line " + std::to_string(line_no));
            return label_from_text(token.substr(5, token.size() - 6));
        };
        node.exit_if_true = parse_exit(exit_true);

        std::string else_token, exit_false;
        if (fields >> else_token) {
            if (else_token != "ELSE" || !(fields >> exit_false))
                throw ParseError("malformed final node at line " + std::to_string(line_no));
            node.exit_if_false = parse_exit(exit_false);
        }
        tree.nodes.push_back(node);
    }
    tree.validate(static_cast<Eigen::Index>(cues.size()));
    return tree;
}

} // namespace frugal
