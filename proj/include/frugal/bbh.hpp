#pragma once

#include "frugal/biblio.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace frugal {

// Year range with inclusive endpoints; absent bounds mean the whole career.
struct YearWindow {
    std::optional<int> first;
    std::optional<int> last;

    bool contains(int year) const {
        return (!first || year >= *first) && (!last || year <= *last);
    }
};

// "Substantial publications" per the default reading: articles and reviews.
inline const std::set<DocType> kSubstantialDocTypes{DocType::Article, DocType::Review};

// Papers with doc_type in doc_types and pub_year inside the window.
int count_publications(const ResearcherRecord& researcher, const YearWindow& window = {},
                       const std::set<DocType>& doc_types = kSubstantialDocTypes);

// Mid-rank percentile of the paper inside its field-year cell:
// (strictly below + 0.5 * equal) / cell size.  Throws PreconditionError when
// the cell is missing or does not contain the paper's citation count.
double citation_percentile(const PaperRecord& paper, const FieldYearDistribution& dist);

// Share of papers whose percentile is at least 1 - top_fraction.  Requires a
// nonempty list.
double pptop_share(const std::vector<PaperRecord>& papers, const FieldYearDistribution& dist,
                   double top_fraction);

enum class InstitutionVerdict { AboveAverage, NotAbove };

// Verdict plus the raw evidence it rests on.
struct InstitutionAssessment {
    InstitutionVerdict verdict = InstitutionVerdict::NotAbove;
    double share = 0.0;   // pptop share of the institution's papers
    int year_min = 0;     // span of years the assessment covered
    int year_max = 0;
};

// above_average iff share of top-(top_fraction) papers strictly exceeds
// x_threshold ("more than x%" is strict).
InstitutionAssessment assess_institution(const InstitutionRecord& inst,
                                         const FieldYearDistribution& dist, double x_threshold,
                                         double top_fraction = 0.10);

enum class ActivityVerdict { AMoreActive, BMoreActive, Indeterminate };

// Compares whole-career substantial-publication counts.  Requires the two
// academic ages to differ by at most age_tolerance (default 0); equal counts
// are indeterminate.
ActivityVerdict compare_researchers(const ResearcherRecord& a, const ResearcherRecord& b,
                                    const std::set<DocType>& doc_types = kSubstantialDocTypes,
                                    int age_tolerance = 0);

// Candidates with the most substantial publications inside their own PhD
// window: smallest prefix of size >= k of the descending-count order,
// extended over boundary ties.  Returned in input order.
std::vector<ResearcherRecord> preselect_candidates(const std::vector<ResearcherRecord>& candidates,
                                                   int k);

struct RefineRule {
    enum class Kind { MinCitations, TopCited } kind = Kind::MinCitations;
    int min_citations = 0; // MinCitations: keep total citations >= this
    int top_k = 1;         // TopCited: keep the top k by count of >= 0.9-percentile papers
};

// Citation-based narrowing of a preselected set; boundary ties under TopCited
// are included.  Returned in input order.
std::vector<ResearcherRecord> refine_preselection(const std::vector<ResearcherRecord>& preselected,
                                                  const FieldYearDistribution& dist,
                                                  const RefineRule& rule);

struct SelectionMode {
    enum class Kind { HighlyCited, Lottery } kind = Kind::HighlyCited;
    std::uint64_t seed = 0; // Lottery only
};

// Final selection: HighlyCited ranks by count of papers at percentile >= 0.9
// (boundary ties included, so the result may exceed n_awards); Lottery draws
// uniformly without replacement, deterministic per seed.  Returned in input
// order.
std::vector<ResearcherRecord> select_final_round(const std::vector<ResearcherRecord>& candidates,
                                                 const FieldYearDistribution& dist, int n_awards,
                                                 const SelectionMode& mode);

struct FIndex {
    bool flag = false; // more tests than hypotheses
    int excess = 0;    // n_tests - n_hypotheses
};

FIndex f_index(const PaperRecord& paper);

struct JournalFIndex {
    double ratio = 0.0;         // sum tests / max(1, sum hypotheses)
    double flagged_share = 0.0; // share of papers with f_index flag
};

JournalFIndex f_index_journal(const std::vector<PaperRecord>& papers);

} // namespace frugal
