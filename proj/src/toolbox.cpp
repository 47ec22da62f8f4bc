#include "frugal/toolbox.hpp"

#include "frugal/errors.hpp"
#include "frugal/rng.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace frugal {

namespace {

Eigen::Index object_row(const Environment& env, const std::string& id) {
    for (std::size_t i = 0; i < env.objects.size(); ++i)
        if (env.objects[i] == id) return static_cast<Eigen::Index>(i);
    throw PreconditionError("unknown object id '" + id + "'");
}

void check_pair(const Environment& env, Eigen::Index a, Eigen::Index b) {
    if (a < 0 || a >= env.n_objects() || b < 0 || b >= env.n_objects())
        throw PreconditionError("object index out of range");
    if (a == b) throw PreconditionError("paired comparison needs two distinct objects");
}

InferenceOutcome guess_outcome(int cues_consulted, std::uint64_t tie_seed) {
    InferenceOutcome out;
    out.choice = Choice::Guess;
    out.resolved = Rng(tie_seed).coin() ? Choice::A : Choice::B;
    out.deciding_cue = std::nullopt;
    out.cues_consulted = cues_consulted;
    return out;
}

} // namespace

void CueOrder::validate(const Environment& env) const {
    if (entries.empty()) throw PreconditionError("cue order is empty");
    std::set<Eigen::Index> seen;
    for (const auto& [index, direction] : entries) {
        if (index < 0 || index >= env.n_cues())
            throw PreconditionError("cue index " + std::to_string(index) + " out of range");
        if (!seen.insert(index).second)
            throw PreconditionError("cue index " + std::to_string(index) + " repeated in order");
        if (direction != +1 && direction != -1)
            throw PreconditionError("cue direction must be +1 or -1");
    }
}

InferenceOutcome ttb_compare(const Environment& env, const CueOrder& order, Eigen::Index a,
                             Eigen::Index b, std::uint64_t tie_seed) {
    check_pair(env, a, b);
    order.validate(env);
    int consulted = 0;
    for (const auto& [index, direction] : order.entries) {
        ++consulted;
        const double va = direction * env.values(a, index);
        const double vb = direction * env.values(b, index);
        if (va != vb) {
            InferenceOutcome out;
            out.choice = va > vb ? Choice::A : Choice::B;
            out.resolved = out.choice;
            out.deciding_cue = index;
            out.cues_consulted = consulted;
            return out;
        }
    }
    return guess_outcome(consulted, tie_seed);
}

InferenceOutcome ttb_compare(const Environment& env, const CueOrder& order, const std::string& a,
                             const std::string& b, std::uint64_t tie_seed) {
    return ttb_compare(env, order, object_row(env, a), object_row(env, b), tie_seed);
}

InferenceOutcome tallying_compare(const Environment& env, const std::vector<Eigen::Index>& cue_subset,
                                  Eigen::Index a, Eigen::Index b, std::uint64_t tie_seed) {
    check_pair(env, a, b);
    if (cue_subset.empty()) throw PreconditionError("tallying needs a nonempty cue subset");
    double tally_a = 0.0, tally_b = 0.0;
    for (const Eigen::Index index : cue_subset) {
        if (index < 0 || index >= env.n_cues())
            throw PreconditionError("cue index " + std::to_string(index) + " out of range");
        const int direction = env.cues[static_cast<std::size_t>(index)].direction;
        tally_a += direction * env.values(a, index);
        tally_b += direction * env.values(b, index);
    }
    const int consulted = static_cast<int>(cue_subset.size());
    if (tally_a == tally_b) return guess_outcome(consulted, tie_seed);
    InferenceOutcome out;
    out.choice = tally_a > tally_b ? Choice::A : Choice::B;
    out.resolved = out.choice;
    // Tallying decides on the aggregate, not any single cue; report the last
    // cue read so the outcome satisfies the "deciding cue present unless
    // guessing" invariant.
    out.deciding_cue = cue_subset.back();
    out.cues_consulted = consulted;
    return out;
}

InferenceOutcome tallying_compare(const Environment& env, const std::vector<Eigen::Index>& cue_subset,
                                  const std::string& a, const std::string& b, std::uint64_t tie_seed) {
    return tallying_compare(env, cue_subset, object_row(env, a), object_row(env, b), tie_seed);
}

Label threshold_classify(double value, double threshold, Polarity polarity) {
    if (!std::isfinite(value) || !std::isfinite(threshold))
        throw PreconditionError("threshold_classify needs finite inputs");
    if (polarity == Polarity::AboveIsPositive)
        return value >= threshold ? Label::Positive : Label::Negative;
    return value <= threshold ? Label::Positive : Label::Negative;
}

std::vector<std::string> top_fraction_select(const std::map<std::string, double>& scores,
                                             double fraction) {
    if (scores.empty()) throw PreconditionError("top_fraction_select needs nonempty scores");
    if (!(fraction > 0.0 && fraction <= 1.0))
        throw PreconditionError("fraction must lie in (0, 1]");
    std::vector<std::pair<std::string, double>> ranked(scores.begin(), scores.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) {
        if (x.second != y.second) return x.second > y.second;
        return x.first < y.first;
    });
    const auto n = ranked.size();
    auto take = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n)));
    take = std::min(take, n);
    const double boundary = ranked[take - 1].second;
    while (take < n && ranked[take].second == boundary) ++take;
    std::vector<std::string> selected;
    for (std::size_t i = 0; i < take; ++i) selected.push_back(ranked[i].first);
    return selected;
}

SatisficingResult satisficing_select(const std::vector<SatisficingOption>& options,
                                     const std::map<std::string, double>& thresholds) {
    SatisficingResult result;
    for (const auto& option : options) {
        ++result.options_examined;
        bool meets_all = true;
        for (const auto& [cue, minimum] : thresholds) {
            auto it = option.values.find(cue);
            if (it == option.values.end())
                throw PreconditionError("option '" + option.id + "' lacks cue '" + cue + "'");
            if (it->second < minimum) {
                meets_all = false;
                break;
            }
        }
        if (meets_all) {
            result.selected = option.id;
            return result;
        }
    }
    return result;
}

} // namespace frugal
