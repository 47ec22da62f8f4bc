#include "frugal/biblio.hpp"

#include "frugal/csv.hpp"
#include "frugal/errors.hpp"
#include "frugal/rng.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

namespace frugal {

std::string to_string(DocType t) {
    switch (t) {
        case DocType::Article: return "article";
        case DocType::Review: return "review";
        default: return "other";
    }
}

DocType doc_type_from_string(const std::string& s) {
    if (s == "article") return DocType::Article;
    if (s == "review") return DocType::Review;
    if (s == "other") return DocType::Other;
    throw SchemaError("unknown doc_type '" + s + "'");
}

FieldYearDistribution FieldYearDistribution::build(const std::vector<PaperRecord>& papers) {
    FieldYearDistribution dist;
    for (const auto& p : papers) dist.cells_[{p.field_id, p.pub_year}].push_back(p.citations);
    for (auto& [key, counts] : dist.cells_) std::sort(counts.begin(), counts.end());
    return dist;
}

const std::vector<int>& FieldYearDistribution::cell(int field_id, int pub_year) const {
    auto it = cells_.find({field_id, pub_year});
    if (it == cells_.end())
        throw PreconditionError("no citation distribution for field " + std::to_string(field_id) +
                                ", year " + std::to_string(pub_year));
    return it->second;
}

bool FieldYearDistribution::has_cell(int field_id, int pub_year) const {
    return cells_.count({field_id, pub_year}) > 0;
}

double BiblioConfig::mu_for(int field_id) const {
    if (field_id >= 0 && static_cast<std::size_t>(field_id) < field_mu.size())
        return field_mu[static_cast<std::size_t>(field_id)];
    return default_mu;
}

double BiblioConfig::sigma_for(int field_id) const {
    if (field_id >= 0 && static_cast<std::size_t>(field_id) < field_sigma.size())
        return field_sigma[static_cast<std::size_t>(field_id)];
    return default_sigma;
}

namespace {

PaperRecord draw_paper(const std::string& id, int year_lo, int year_hi, int n_fields,
                       const BiblioConfig& config, Rng& rng) {
    PaperRecord p;
    p.id = id;
    p.field_id = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n_fields)));
    p.pub_year = year_lo + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(year_hi - year_lo + 1)));
    const double mu = config.mu_for(p.field_id);
    const double sigma = config.sigma_for(p.field_id);
    p.citations = static_cast<int>(std::floor(std::exp(mu + sigma * rng.next_normal())));
    const double kind = rng.next_double();
    p.doc_type = kind < 0.70 ? DocType::Article : (kind < 0.85 ? DocType::Review : DocType::Other);
    p.n_hypotheses = 1 + static_cast<int>(rng.next_below(4));
    p.n_tests = static_cast<int>(rng.next_below(10));
    return p;
}

} // namespace

BiblioWorld simulate_bibliometric_world(int n_researchers, int n_institutions, int n_fields,
                                        std::uint64_t seed, const BiblioConfig& config) {
    if (n_researchers < 1 || n_institutions < 1 || n_fields < 1)
        throw PreconditionError("world needs at least 1 researcher, institution, and field");
    if (config.year_min > config.year_max)
        throw PreconditionError("year_min must not exceed year_max");

    BiblioWorld world;
    const int span = config.year_max - config.year_min;

    // Separate sub-streams per population so adding institutions never
    // perturbs the researchers drawn for the same seed.
    Rng res_rng(mix_seed(seed, 0));
    for (int r = 0; r < n_researchers; ++r) {
        ResearcherRecord rec;
        rec.id = "r" + std::to_string(r + 1);
        const int start_span = std::max(1, span - 3);
        rec.phd_start = config.year_min + static_cast<int>(res_rng.next_below(static_cast<std::uint64_t>(start_span)));
        rec.phd_end = std::min(rec.phd_start + 4, config.year_max);
        rec.academic_age = config.year_max - rec.phd_start;
        const int n_papers = 1 + res_rng.next_poisson(config.researcher_papers_mean);
        for (int p = 0; p < n_papers; ++p)
            rec.papers.push_back(draw_paper(rec.id + "p" + std::to_string(p + 1), rec.phd_start,
                                            config.year_max, n_fields, config, res_rng));
        world.researchers.push_back(std::move(rec));
    }

    Rng inst_rng(mix_seed(seed, 1));
    for (int i = 0; i < n_institutions; ++i) {
        InstitutionRecord rec;
        rec.id = "i" + std::to_string(i + 1);
        rec.mission = "research";
        const int n_papers = 1 + inst_rng.next_poisson(config.institution_papers_mean);
        for (int p = 0; p < n_papers; ++p)
            rec.papers.push_back(draw_paper(rec.id + "p" + std::to_string(p + 1), config.year_min,
                                            config.year_max, n_fields, config, inst_rng));
        world.institutions.push_back(std::move(rec));
    }

    std::vector<PaperRecord> all;
    for (const auto& r : world.researchers) all.insert(all.end(), r.papers.begin(), r.papers.end());
    for (const auto& i : world.institutions) all.insert(all.end(), i.papers.begin(), i.papers.end());
    world.distribution = FieldYearDistribution::build(all);
    return world;
}

namespace {

std::vector<std::string> paper_row(const PaperRecord& p, const std::string& owner_kind,
                                   const std::string& owner_id) {
    return {p.id,
            owner_kind,
            owner_id,
            std::to_string(p.field_id),
            std::to_string(p.pub_year),
            std::to_string(p.citations),
            to_string(p.doc_type),
            std::to_string(p.n_hypotheses),
            std::to_string(p.n_tests)};
}

int parse_int(const std::string& field, std::size_t row, const std::string& column) {
    const double v = csv::parse_double(field, row, column);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw SchemaError("non-integer cell '" + field + "' at row " + std::to_string(row) +
                          ", column '" + column + "'");
    return i;
}

} // namespace

void write_world_csv(const std::string& dir, const BiblioWorld& world) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error("cannot create directory " + dir + ": " + ec.message());

    std::vector<std::vector<std::string>> researchers{{"id", "academic_age", "phd_start", "phd_end"}};
    for (const auto& r : world.researchers)
        researchers.push_back({r.id, std::to_string(r.academic_age), std::to_string(r.phd_start),
                               std::to_string(r.phd_end)});
    csv::write_file(dir + "/researchers.csv", researchers);

    std::vector<std::vector<std::string>> institutions{{"id", "mission"}};
    for (const auto& i : world.institutions) institutions.push_back({i.id, i.mission});
    csv::write_file(dir + "/institutions.csv", institutions);

    std::vector<std::vector<std::string>> papers{{"id", "owner_kind", "owner_id", "field_id",
                                                  "pub_year", "citations", "doc_type",
                                                  "n_hypotheses", "n_tests"}};
    for (const auto& r : world.researchers)
        for (const auto& p : r.papers) papers.push_back(paper_row(p, "researcher", r.id));
    for (const auto& i : world.institutions)
        for (const auto& p : i.papers) papers.push_back(paper_row(p, "institution", i.id));
    csv::write_file(dir + "/papers.csv", papers);
}

BiblioWorld load_world_parts(const std::optional<std::string>& researchers_path,
                             const std::optional<std::string>& institutions_path,
                             const std::string& papers_path) {
    BiblioWorld world;

    std::map<std::string, std::size_t> researcher_index;
    if (researchers_path) {
        csv::Table rt = csv::read_file(*researchers_path);
        if (rt.rows.empty() ||
            rt.rows[0] != std::vector<std::string>{"id", "academic_age", "phd_start", "phd_end"})
            throw SchemaError("researchers CSV header must be id,academic_age,phd_start,phd_end");
        for (std::size_t r = 1; r < rt.rows.size(); ++r) {
            const auto& row = rt.rows[r];
            if (row.size() != 4)
                throw ParseError("researchers CSV row " + std::to_string(r + 1) + " has wrong field count");
            ResearcherRecord rec;
            rec.id = row[0];
            rec.academic_age = parse_int(row[1], r + 1, "academic_age");
            rec.phd_start = parse_int(row[2], r + 1, "phd_start");
            rec.phd_end = parse_int(row[3], r + 1, "phd_end");
            if (rec.phd_start > rec.phd_end)
                throw SchemaError("researcher " + rec.id + " has phd_start after phd_end");
            if (rec.academic_age < 0)
                throw SchemaError("researcher " + rec.id + " has negative academic_age");
            if (!researcher_index.emplace(rec.id, world.researchers.size()).second)
                throw SchemaError("duplicate researcher id '" + rec.id + "'");
            world.researchers.push_back(std::move(rec));
        }
    }

    std::map<std::string, std::size_t> institution_index;
    if (institutions_path) {
        csv::Table it = csv::read_file(*institutions_path);
        if (it.rows.empty() || it.rows[0] != std::vector<std::string>{"id", "mission"})
            throw SchemaError("institutions CSV header must be id,mission");
        for (std::size_t r = 1; r < it.rows.size(); ++r) {
            const auto& row = it.rows[r];
            if (row.size() != 2)
                throw ParseError("institutions CSV row " + std::to_string(r + 1) + " has wrong field count");
            InstitutionRecord rec;
            rec.id = row[0];
            rec.mission = row[1];
            if (!institution_index.emplace(rec.id, world.institutions.size()).second)
                throw SchemaError("duplicate institution id '" + rec.id + "'");
            world.institutions.push_back(std::move(rec));
        }
    }

    csv::Table pt = csv::read_file(papers_path);
    const std::vector<std::string> expected{"id", "owner_kind", "owner_id", "field_id", "pub_year",
                                            "citations", "doc_type", "n_hypotheses", "n_tests"};
    if (pt.rows.empty() || pt.rows[0] != expected)
        throw SchemaError("papers CSV header must be " +
                          std::string("id,owner_kind,owner_id,field_id,pub_year,citations,doc_type,"
                                      "n_hypotheses,n_tests"));
    std::vector<PaperRecord> all;
    for (std::size_t r = 1; r < pt.rows.size(); ++r) {
        const auto& row = pt.rows[r];
        if (row.size() != expected.size())
            throw ParseError("papers CSV row " + std::to_string(r + 1) + " has wrong field count");
        PaperRecord p;
        p.id = row[0];
        p.field_id = parse_int(row[3], r + 1, "field_id");
        p.pub_year = parse_int(row[4], r + 1, "pub_year");
        p.citations = parse_int(row[5], r + 1, "citations");
        p.doc_type = doc_type_from_string(row[6]);
        p.n_hypotheses = parse_int(row[7], r + 1, "n_hypotheses");
        p.n_tests = parse_int(row[8], r + 1, "n_tests");
        if (p.citations < 0 || p.n_hypotheses < 0 || p.n_tests < 0)
            throw SchemaError("paper " + p.id + " has a negative count at row " + std::to_string(r + 1));
        all.push_back(p);
        if (row[1] == "researcher") {
            if (!researchers_path) continue;
            auto owner = researcher_index.find(row[2]);
            if (owner == researcher_index.end())
                throw SchemaError("paper " + p.id + " references unknown researcher '" + row[2] + "'");
            world.researchers[owner->second].papers.push_back(std::move(p));
        } else if (row[1] == "institution") {
            if (!institutions_path) continue;
            auto owner = institution_index.find(row[2]);
            if (owner == institution_index.end())
                throw SchemaError("paper " + p.id + " references unknown institution '" + row[2] + "'");
            world.institutions[owner->second].papers.push_back(std::move(p));
        } else {
            throw SchemaError("paper " + p.id + " has unknown owner_kind '" + row[1] + "'");
        }
    }
    world.distribution = FieldYearDistribution::build(all);
    return world;
}

BiblioWorld load_world_csv(const std::string& dir) {
    return load_world_parts(dir + "/researchers.csv", dir + "/institutions.csv",
                            dir + "/papers.csv");
}

} // namespace frugal
