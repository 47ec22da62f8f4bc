#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace frugal {

enum class DocType { Article, Review, Other };

std::string to_string(DocType t);
DocType doc_type_from_string(const std::string& s);

// One publication with the fields the bibliometric heuristics read.  The
// hypothesis/test counts feed the f-index; everything else feeds citation
// percentiles and publication counting.
struct PaperRecord {
    std::string id;
    int field_id = 0;
    int pub_year = 0;
    int citations = 0;
    DocType doc_type = DocType::Article;
    int n_hypotheses = 0;
    int n_tests = 0;
};

struct ResearcherRecord {
    std::string id;
    int academic_age = 0; // years since first publication
    int phd_start = 0;
    int phd_end = 0;
    std::vector<PaperRecord> papers;
};

struct InstitutionRecord {
    std::string id;
    std::vector<PaperRecord> papers;
    std::string mission;
};

// Sorted citation counts per (field_id, pub_year) cell.  Percentile lookups
// are defined only for papers whose cell is present.
class FieldYearDistribution {
public:
    // Sorts each cell ascending; drops nothing.
    static FieldYearDistribution build(const std::vector<PaperRecord>& papers);

    // Sorted ascending citation counts; throws PreconditionError when the
    // cell is absent.
    const std::vector<int>& cell(int field_id, int pub_year) const;

    bool has_cell(int field_id, int pub_year) const;

    const std::map<std::pair<int, int>, std::vector<int>>& cells() const { return cells_; }

private:
    std::map<std::pair<int, int>, std::vector<int>> cells_;
};

// Per-field citation law and world-shape knobs for the simulator.  Citations
// follow a discretized lognormal floor(exp(mu + sigma*N(0,1))); field k uses
// the override vectors when they are long enough, the defaults otherwise.
struct BiblioConfig {
    double default_mu = 1.0;
    double default_sigma = 1.0;
    std::vector<double> field_mu;    // optional per-field overrides
    std::vector<double> field_sigma; // optional per-field overrides
    int year_min = 2005;
    int year_max = 2015;
    double researcher_papers_mean = 8.0;  // papers = 1 + Poisson(mean)
    double institution_papers_mean = 40.0;

    double mu_for(int field_id) const;
    double sigma_for(int field_id) const;
};

struct BiblioWorld {
    std::vector<ResearcherRecord> researchers;
    std::vector<InstitutionRecord> institutions;
    FieldYearDistribution distribution; // built over every paper in the world
};

// Generates researchers, institutions, and their papers; deterministic per
// seed.  Every paper lands in [config.year_min, config.year_max] so the
// field-year distribution covers it.
BiblioWorld simulate_bibliometric_world(int n_researchers, int n_institutions, int n_fields,
                                        std::uint64_t seed, const BiblioConfig& config = {});

// World serialization as three CSV files under `dir`: researchers.csv
// (id,academic_age,phd_start,phd_end), institutions.csv (id,mission), and
// papers.csv (id,owner_kind,owner_id,field_id,pub_year,citations,doc_type,
// n_hypotheses,n_tests).  load rebuilds the distribution from papers.csv.
void write_world_csv(const std::string& dir, const BiblioWorld& world);
BiblioWorld load_world_csv(const std::string& dir);

// Partial load for workflows that only carry one population: a population
// file left unset skips owner resolution for that kind (its papers still
// enter the field-year distribution); when a file IS given, every referenced
// owner of that kind must exist in it.
BiblioWorld load_world_parts(const std::optional<std::string>& researchers_path,
                             const std::optional<std::string>& institutions_path,
                             const std::string& papers_path);

} // namespace frugal
