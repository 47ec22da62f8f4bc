#include "frugal/green_mehr.hpp"

#include "frugal/errors.hpp"

#include <cstdio>

namespace frugal {

const std::vector<CueDefinition>& green_mehr_cues() {
    static const std::vector<CueDefinition> cues = [] {
        std::vector<CueDefinition> list;
        for (const char* name : {"st_change", "chest_pain_chief", "s1", "s2", "s3", "s4", "s5"}) {
            CueDefinition cue;
            cue.name = name;
            cue.kind = CueKind::Binary;
            cue.direction = +1;
            list.push_back(cue);
        }
        return list;
    }();
    return cues;
}

Label green_mehr_rule(bool st_change, bool chest_pain_chief, bool s1, bool s2, bool s3, bool s4,
                      bool s5) {
    if (st_change) return Label::Positive;
    if (!chest_pain_chief) return Label::Negative;
    return (s1 || s2 || s3 || s4 || s5) ? Label::Positive : Label::Negative;
}

Label green_mehr_rule(const Eigen::VectorXd& cue_values) {
    if (cue_values.size() != kGreenMehrCueCount)
        throw PreconditionError("fixture rule expects exactly 7 cue values");
    return green_mehr_rule(cue_values(0) != 0.0, cue_values(1) != 0.0, cue_values(2) != 0.0,
                           cue_values(3) != 0.0, cue_values(4) != 0.0, cue_values(5) != 0.0,
                           cue_values(6) != 0.0);
}

Environment green_mehr_environment() {
    Environment env;
    env.cues = green_mehr_cues();
    const int n = 1 << kGreenMehrCueCount;
    env.values.resize(n, kGreenMehrCueCount);
    env.criterion.resize(n);
    for (int row = 0; row < n; ++row) {
        char id[8];
        std::snprintf(id, sizeof id, "p%03d", row + 1);
        env.objects.emplace_back(id);
        for (int bit = 0; bit < kGreenMehrCueCount; ++bit)
            env.values(row, bit) = (row >> (kGreenMehrCueCount - 1 - bit)) & 1;
        env.criterion(row) =
            green_mehr_rule(env.values.row(row).transpose()) == Label::Positive ? 1 : 0;
    }
    env.validate();
    return env;
}

Environment green_mehr_tree_view(const Environment& env) {
    if (env.n_cues() != kGreenMehrCueCount)
        throw PreconditionError("tree view expects the 7-cue fixture environment");
    Environment view;
    for (const char* name : {"st_change", "chest_pain_chief", "any_other_sign"}) {
        CueDefinition cue;
        cue.name = name;
        cue.kind = CueKind::Binary;
        cue.direction = +1;
        view.cues.push_back(cue);
    }
    view.objects = env.objects;
    view.criterion = env.criterion;
    view.values.resize(env.n_objects(), 3);
    for (Eigen::Index i = 0; i < env.n_objects(); ++i) {
        view.values(i, 0) = env.values(i, 0);
        view.values(i, 1) = env.values(i, 1);
        view.values(i, 2) = env.values.row(i).tail(5).maxCoeff();
    }
    view.validate();
    return view;
}

FastFrugalTree green_mehr_tree() {
    FastFrugalTree tree;
    TreeNode st;
    st.cue = 0;
    st.threshold = 0.5;
    st.cmp = Comparison::GreaterEqual;
    st.exit_if_true = Label::Positive;
    tree.nodes.push_back(st);

    TreeNode chest;
    chest.cue = 1;
    chest.threshold = 0.5;
    chest.cmp = Comparison::Less;
    chest.exit_if_true = Label::Negative;
    tree.nodes.push_back(chest);

    TreeNode signs;
    signs.cue = 2;
    signs.threshold = 0.5;
    signs.cmp = Comparison::GreaterEqual;
    signs.exit_if_true = Label::Positive;
    signs.exit_if_false = Label::Negative;
    tree.nodes.push_back(signs);

    tree.validate(3);
    return tree;
}

} // namespace frugal
