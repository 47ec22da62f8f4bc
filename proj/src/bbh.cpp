#include "frugal/bbh.hpp"

#include "frugal/errors.hpp"
#include "frugal/rng.hpp"

#include <algorithm>
#include <limits>

namespace frugal {

int count_publications(const ResearcherRecord& researcher, const YearWindow& window,
                       const std::set<DocType>& doc_types) {
    if (doc_types.empty()) throw PreconditionError("doc_types must be nonempty");
    int count = 0;
    for (const auto& paper : researcher.papers)
        if (doc_types.count(paper.doc_type) && window.contains(paper.pub_year)) ++count;
    return count;
}

double citation_percentile(const PaperRecord& paper, const FieldYearDistribution& dist) {
    const std::vector<int>& counts = dist.cell(paper.field_id, paper.pub_year);
    auto [lo, hi] = std::equal_range(counts.begin(), counts.end(), paper.citations);
    if (lo == hi)
        throw PreconditionError("paper '" + paper.id + "' (" + std::to_string(paper.citations) +
                                " citations) is not part of its field-year cell");
    const auto below = static_cast<double>(lo - counts.begin());
    const auto equal = static_cast<double>(hi - lo);
    return (below + 0.5 * equal) / static_cast<double>(counts.size());
}

double pptop_share(const std::vector<PaperRecord>& papers, const FieldYearDistribution& dist,
                   double top_fraction) {
    if (papers.empty()) throw PreconditionError("pptop_share needs a nonempty paper list");
    if (!(top_fraction > 0.0 && top_fraction < 1.0))
        throw PreconditionError("top_fraction must lie strictly between 0 and 1");
    int top = 0;
    for (const auto& paper : papers)
        if (citation_percentile(paper, dist) >= 1.0 - top_fraction) ++top;
    return static_cast<double>(top) / static_cast<double>(papers.size());
}

InstitutionAssessment assess_institution(const InstitutionRecord& inst,
                                         const FieldYearDistribution& dist, double x_threshold,
                                         double top_fraction) {
    if (inst.papers.empty())
        throw PreconditionError("institution '" + inst.id + "' has no papers to assess");
    InstitutionAssessment result;
    result.share = pptop_share(inst.papers, dist, top_fraction);
    result.verdict = result.share > x_threshold ? InstitutionVerdict::AboveAverage
                                                : InstitutionVerdict::NotAbove;
    result.year_min = std::numeric_limits<int>::max();
    result.year_max = std::numeric_limits<int>::min();
    for (const auto& paper : inst.papers) {
        result.year_min = std::min(result.year_min, paper.pub_year);
        result.year_max = std::max(result.year_max, paper.pub_year);
    }
    return result;
}

ActivityVerdict compare_researchers(const ResearcherRecord& a, const ResearcherRecord& b,
                                    const std::set<DocType>& doc_types, int age_tolerance) {
    if (std::abs(a.academic_age - b.academic_age) > age_tolerance)
        throw PreconditionError("academic ages differ beyond tolerance: " +
                                std::to_string(a.academic_age) + " vs " +
                                std::to_string(b.academic_age));
    const int count_a = count_publications(a, {}, doc_types);
    const int count_b = count_publications(b, {}, doc_types);
    if (count_a > count_b) return ActivityVerdict::AMoreActive;
    if (count_b > count_a) return ActivityVerdict::BMoreActive;
    return ActivityVerdict::Indeterminate;
}

namespace {

// Smallest prefix of the descending-score order with size >= k, extended over
// boundary ties; returns the kept positions in input order.
std::vector<ResearcherRecord> keep_top_scored(const std::vector<ResearcherRecord>& records,
                                              const std::vector<long>& scores, int k) {
    std::vector<long> sorted_scores = scores;
    std::sort(sorted_scores.begin(), sorted_scores.end(), std::greater<>());
    const auto capped = std::min<std::size_t>(static_cast<std::size_t>(k), sorted_scores.size());
    const long boundary = sorted_scores[capped - 1];
    std::vector<ResearcherRecord> kept;
    for (std::size_t i = 0; i < records.size(); ++i)
        if (scores[i] >= boundary) kept.push_back(records[i]);
    return kept;
}

long top_decile_paper_count(const ResearcherRecord& researcher, const FieldYearDistribution& dist) {
    long count = 0;
    for (const auto& paper : researcher.papers)
        if (citation_percentile(paper, dist) >= 0.9) ++count;
    return count;
}

} // namespace

std::vector<ResearcherRecord> preselect_candidates(const std::vector<ResearcherRecord>& candidates,
                                                   int k) {
    if (candidates.empty()) throw PreconditionError("preselect needs a nonempty candidate list");
    if (k < 1) throw PreconditionError("k must be >= 1");
    std::vector<long> scores;
    for (const auto& candidate : candidates) {
        YearWindow phd{candidate.phd_start, candidate.phd_end};
        scores.push_back(count_publications(candidate, phd));
    }
    return keep_top_scored(candidates, scores, k);
}

std::vector<ResearcherRecord> refine_preselection(const std::vector<ResearcherRecord>& preselected,
                                                  const FieldYearDistribution& dist,
                                                  const RefineRule& rule) {
    if (preselected.empty()) throw PreconditionError("refine needs a nonempty preselection");
    if (rule.kind == RefineRule::Kind::MinCitations) {
        std::vector<ResearcherRecord> kept;
        for (const auto& candidate : preselected) {
            long total = 0;
            for (const auto& paper : candidate.papers) total += paper.citations;
            if (total >= rule.min_citations) kept.push_back(candidate);
        }
        return kept;
    }
    if (rule.top_k < 1) throw PreconditionError("top_cited k must be >= 1");
    std::vector<long> scores;
    for (const auto& candidate : preselected) scores.push_back(top_decile_paper_count(candidate, dist));
    return keep_top_scored(preselected, scores, rule.top_k);
}

std::vector<ResearcherRecord> select_final_round(const std::vector<ResearcherRecord>& candidates,
                                                 const FieldYearDistribution& dist, int n_awards,
                                                 const SelectionMode& mode) {
    if (candidates.empty()) throw PreconditionError("final round needs a nonempty candidate list");
    if (n_awards < 1) throw PreconditionError("n_awards must be >= 1");
    if (mode.kind == SelectionMode::Kind::HighlyCited) {
        std::vector<long> scores;
        for (const auto& candidate : candidates) scores.push_back(top_decile_paper_count(candidate, dist));
        return keep_top_scored(candidates, scores, n_awards);
    }
    // Lottery: Fisher-Yates prefix, then restore input order.
    std::vector<std::size_t> order(candidates.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rng rng(mode.seed);
    rng.shuffle(order);
    const auto take = std::min<std::size_t>(static_cast<std::size_t>(n_awards), order.size());
    std::vector<std::size_t> chosen(order.begin(), order.begin() + take);
    std::sort(chosen.begin(), chosen.end());
    std::vector<ResearcherRecord> selected;
    for (const std::size_t i : chosen) selected.push_back(candidates[i]);
    return selected;
}

FIndex f_index(const PaperRecord& paper) {
    FIndex out;
    out.excess = paper.n_tests - paper.n_hypotheses;
    out.flag = paper.n_tests > paper.n_hypotheses;
    return out;
}

JournalFIndex f_index_journal(const std::vector<PaperRecord>& papers) {
    if (papers.empty()) throw PreconditionError("journal f-index needs a nonempty paper list");
    long tests = 0, hypotheses = 0, flagged = 0;
    for (const auto& paper : papers) {
        tests += paper.n_tests;
        hypotheses += paper.n_hypotheses;
        if (f_index(paper).flag) ++flagged;
    }
    JournalFIndex out;
    out.ratio = static_cast<double>(tests) / static_cast<double>(std::max<long>(1, hypotheses));
    out.flagged_share = static_cast<double>(flagged) / static_cast<double>(papers.size());
    return out;
}

} // namespace frugal
