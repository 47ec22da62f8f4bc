#include "frugal/baselines.hpp"
#include "frugal/bbh.hpp"
#include "frugal/biblio.hpp"
#include "frugal/csv.hpp"
#include "frugal/environment.hpp"
#include "frugal/errors.hpp"
#include "frugal/fft.hpp"
#include "frugal/green_mehr.hpp"
#include "frugal/harness.hpp"
#include "frugal/simulate.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw frugal::ParseError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool ends_with(const std::string& text, const std::string& suffix) {
    return text.size() >= suffix.size() &&
           text.compare(text.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct GlobalOptions {
    std::uint64_t seed = 0;
    bool seed_given = false;
    bool quiet = false;

    std::uint64_t seed_or(std::uint64_t fallback) const { return seed_given ? seed : fallback; }
};

void say(const GlobalOptions& global, const std::string& message) {
    if (!global.quiet) std::cout << message << '\n';
}

// Case files for `fft classify`: header `id,<cue...>`; a column matching the
// criterion name is tolerated and ignored so environment CSVs work as cases.
struct CaseFile {
    std::vector<std::string> ids;
    std::vector<frugal::CueDefinition> cues;
    Eigen::MatrixXd values;
};

CaseFile read_cases(const std::string& path, const std::string& criterion_column) {
    const frugal::csv::Table table = frugal::csv::read_file(path);
    const auto& header = table.rows[0];
    if (header.size() < 2 || header[0] != "id")
        throw frugal::SchemaError("case CSV header must be 'id,<cue...>'");

    CaseFile cases;
    std::vector<std::size_t> cue_columns;
    for (std::size_t j = 1; j < header.size(); ++j) {
        if (header[j] == criterion_column) continue;
        frugal::CueDefinition cue;
        cue.name = header[j];
        cases.cues.push_back(cue);
        cue_columns.push_back(j);
    }
    if (cases.cues.empty()) throw frugal::SchemaError("case CSV has no cue columns");

    std::size_t first_data = 1;
    if (table.rows.size() > 1 && !table.rows[1].empty() && table.rows[1][0] == "direction")
        first_data = 2;

    const std::size_t n = table.rows.size() - first_data;
    if (n == 0) throw frugal::SchemaError("case CSV has no data rows");
    cases.values.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(cue_columns.size()));
    for (std::size_t r = 0; r < n; ++r) {
        const auto& row = table.rows[first_data + r];
        if (row.size() != header.size())
            throw frugal::ParseError("row " + std::to_string(first_data + r + 1) +
                                     " has the wrong field count");
        cases.ids.push_back(row[0]);
        for (std::size_t c = 0; c < cue_columns.size(); ++c)
            cases.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                frugal::csv::parse_double(row[cue_columns[c]], first_data + r + 1,
                                          header[cue_columns[c]]);
    }
    return cases;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fast-and-frugal heuristics and bibliometric decision rules"};
    app.require_subcommand(1);

    GlobalOptions global;
    auto* seed_option = app.add_option("--seed", global.seed, "Run seed (also via FRUGAL_SEED; the flag wins)")
                            ->envname("FRUGAL_SEED");
    app.add_flag("--quiet", global.quiet, "Suppress progress output");

    // --- simulate ------------------------------------------------------
    auto* simulate = app.add_subcommand("simulate", "Generate a synthetic environment CSV");
    simulate->fallthrough();
    std::string simulate_spec_path, simulate_out;
    std::string simulate_criterion = "criterion";
    simulate->add_option("--spec", simulate_spec_path, "Simulation spec JSON");
    simulate->add_option("--out", simulate_out, "Output environment CSV")->required();
    simulate->add_option("--criterion", simulate_criterion, "Criterion column name in the output");

    // --- world ----------------------------------------------------------
    auto* world_cmd = app.add_subcommand("world", "Generate a bibliometric world as three CSVs");
    world_cmd->fallthrough();
    int world_researchers = 100, world_institutions = 10, world_fields = 2;
    std::string world_dir;
    frugal::BiblioConfig world_config;
    world_cmd->add_option("--researchers", world_researchers, "Number of researchers");
    world_cmd->add_option("--institutions", world_institutions, "Number of institutions");
    world_cmd->add_option("--fields", world_fields, "Number of fields");
    world_cmd->add_option("--mu", world_config.default_mu, "Lognormal mu for citations");
    world_cmd->add_option("--sigma", world_config.default_sigma, "Lognormal sigma for citations");
    world_cmd->add_option("--year-min", world_config.year_min, "First publication year");
    world_cmd->add_option("--year-max", world_config.year_max, "Last publication year");
    world_cmd->add_option("--papers-mean", world_config.researcher_papers_mean,
                          "Mean extra papers per researcher (papers = 1 + Poisson)");
    world_cmd->add_option("--inst-papers-mean", world_config.institution_papers_mean,
                          "Mean extra papers per institution");
    world_cmd->add_option("--out-dir", world_dir, "Directory for the three CSVs")->required();

    // --- bench ----------------------------------------------------------
    auto* bench = app.add_subcommand("bench", "Cross-validate strategies on an environment");
    bench->fallthrough();
    std::string bench_env_path, bench_spec_path, bench_strategies_path, bench_out;
    std::string bench_criterion = "criterion";
    int bench_reps = 20;
    double bench_train_frac = 0.5;
    bool bench_timings = false;
    auto* bench_env_opt = bench->add_option("--env", bench_env_path, "Environment CSV");
    auto* bench_spec_opt = bench->add_option("--spec", bench_spec_path, "Simulation spec JSON");
    bench->add_option("--strategies", bench_strategies_path, "Strategy list JSON")->required();
    bench->add_option("--reps", bench_reps, "Replications");
    bench->add_option("--train-frac", bench_train_frac, "Training fraction per split");
    bench->add_option("--out", bench_out, "Report path (.json for JSON, otherwise CSV)")->required();
    bench->add_option("--criterion", bench_criterion, "Criterion column in --env");
    bench->add_flag("--timings", bench_timings, "Emit measured wall times instead of 0");
    bench_env_opt->excludes(bench_spec_opt);

    // --- fft -------------------------------------------------------------
    auto* fft = app.add_subcommand("fft", "Build or apply fast-and-frugal trees");
    fft->require_subcommand(1);
    fft->fallthrough();

    auto* fft_build = fft->add_subcommand("build", "Build a tree from a training environment");
    fft_build->fallthrough();
    std::string build_train, build_out, build_ordering = "validity", build_exit = "max";
    std::string build_criterion = "criterion";
    int build_depth = 0;
    double build_cost_fn = 1.0, build_cost_fp = 1.0;
    fft_build->add_option("--train", build_train, "Training environment CSV")->required();
    fft_build->add_option("--criterion", build_criterion, "Criterion column name");
    fft_build->add_option("--ordering", build_ordering, "Cue ordering: validity or maxpv")
        ->check(CLI::IsMember({"validity", "maxpv"}));
    fft_build->add_option("--exit", build_exit, "Exit policy: zigzag or max")
        ->check(CLI::IsMember({"zigzag", "max"}));
    fft_build->add_option("--depth", build_depth, "Maximum depth (0 = all cues)");
    fft_build->add_option("--cost-fn", build_cost_fn, "Cost of a false negative");
    fft_build->add_option("--cost-fp", build_cost_fp, "Cost of a false positive");
    fft_build->add_option("--out", build_out, "Output tree text file")->required();

    auto* fft_classify_cmd = fft->add_subcommand("classify", "Classify cases with a tree");
    fft_classify_cmd->fallthrough();
    std::string classify_tree, classify_cases, classify_out;
    std::string classify_criterion = "criterion";
    fft_classify_cmd->add_option("--tree", classify_tree, "Tree text file")->required();
    fft_classify_cmd->add_option("--cases", classify_cases, "Case CSV (id,<cue...>)")->required();
    fft_classify_cmd->add_option("--criterion", classify_criterion,
                                 "Criterion column to ignore if present");
    fft_classify_cmd->add_option("--out", classify_out, "Output labels CSV")->required();

    // --- bbh --------------------------------------------------------------
    auto* bbh = app.add_subcommand("bbh", "Bibliometrics-based heuristics");
    bbh->require_subcommand(1);
    bbh->fallthrough();

    auto* assess = bbh->add_subcommand("assess", "Assess institutions by top-cited paper share");
    assess->fallthrough();
    std::string assess_papers, assess_institutions, assess_out;
    double assess_top = 0.10, assess_x = 0.20;
    assess->add_option("--papers", assess_papers, "Papers CSV (world schema)")->required();
    assess->add_option("--institutions", assess_institutions, "Institutions CSV")->required();
    assess->add_option("--top", assess_top, "Top citation fraction (e.g. 0.10)");
    assess->add_option("--x", assess_x, "Share threshold (above_average iff share > x)");
    assess->add_option("--out", assess_out, "Output verdict CSV")->required();

    auto* preselect = bbh->add_subcommand("preselect", "Shortlist researchers by publication count");
    preselect->fallthrough();
    std::string preselect_researchers, preselect_papers, preselect_out;
    int preselect_k = 1;
    std::optional<int> preselect_min_citations;
    preselect->add_option("--researchers", preselect_researchers, "Researchers CSV")->required();
    preselect->add_option("--papers", preselect_papers, "Papers CSV (world schema)")->required();
    preselect->add_option("--k", preselect_k, "Shortlist size before boundary ties")->required();
    preselect->add_option("--min-citations", preselect_min_citations,
                          "Refine: keep total citations >= this");
    preselect->add_option("--out", preselect_out, "Output shortlist CSV")->required();

    CLI11_PARSE(app, argc, argv);
    global.seed_given = seed_option->count() > 0;

    try {
        if (simulate->parsed()) {
            frugal::SimSpec spec;
            if (!simulate_spec_path.empty()) spec = frugal::parse_sim_spec(slurp(simulate_spec_path));
            spec.seed = global.seed_or(spec.seed);
            const frugal::Environment env = frugal::simulate_environment(spec);
            frugal::write_environment_csv(simulate_out, env, simulate_criterion);
            say(global, "wrote " + std::to_string(env.n_objects()) + " objects x " +
                            std::to_string(env.n_cues()) + " cues to " + simulate_out);
        } else if (world_cmd->parsed()) {
            const frugal::BiblioWorld world = frugal::simulate_bibliometric_world(
                world_researchers, world_institutions, world_fields, global.seed_or(0), world_config);
            frugal::write_world_csv(world_dir, world);
            say(global, "wrote researchers.csv, institutions.csv, papers.csv to " + world_dir);
        } else if (bench->parsed()) {
            const std::vector<frugal::StrategySpec> strategies =
                frugal::parse_strategies(slurp(bench_strategies_path));
            frugal::BenchmarkReport report;
            if (!bench_env_path.empty()) {
                const frugal::Environment env =
                    frugal::load_environment(bench_env_path, bench_criterion);
                report = frugal::cross_validate(env, strategies, bench_reps, bench_train_frac,
                                                global.seed_or(0));
                report.source = bench_env_path;
            } else if (!bench_spec_path.empty()) {
                const frugal::SimSpec spec = frugal::parse_sim_spec(slurp(bench_spec_path));
                report = frugal::cross_validate(spec, strategies, bench_reps, bench_train_frac,
                                                global.seed_or(0));
            } else {
                throw frugal::PreconditionError("bench needs --env or --spec");
            }
            report.include_timings = bench_timings;
            const frugal::ReportFormat format = ends_with(bench_out, ".json")
                                                    ? frugal::ReportFormat::Json
                                                    : frugal::ReportFormat::Csv;
            frugal::emit_report(report, format, bench_out);
            say(global, "wrote benchmark report for " + std::to_string(strategies.size()) +
                            " strategies to " + bench_out);
        } else if (fft_build->parsed()) {
            const frugal::Environment train = frugal::load_environment(build_train, build_criterion);
            const frugal::OrderingRule ordering = build_ordering == "maxpv"
                                                      ? frugal::OrderingRule::ByMaxPredictiveValue
                                                      : frugal::OrderingRule::ByValidity;
            const frugal::ExitPolicy exit_policy = build_exit == "zigzag"
                                                       ? frugal::ExitPolicy::Zigzag
                                                       : frugal::ExitPolicy::MaxSide;
            const int depth = build_depth > 0 ? build_depth : static_cast<int>(train.n_cues());
            std::vector<std::string> warnings;
            const frugal::FastFrugalTree tree =
                frugal::build_fft(train, ordering, exit_policy, depth,
                                  frugal::CostRatio{build_cost_fn, build_cost_fp}, &warnings);
            for (const auto& warning : warnings) std::cerr << "warning: " << warning << '\n';
            const std::string text = frugal::tree_to_text(tree, train.cues);
            std::ofstream out(build_out, std::ios::binary);
            if (!out) throw frugal::Error("cannot open file for writing: " + build_out);
            out << text;
            say(global, "wrote depth-" + std::to_string(tree.depth()) + " tree to " + build_out);
        } else if (fft_classify_cmd->parsed()) {
            const CaseFile cases = read_cases(classify_cases, classify_criterion);
            const frugal::FastFrugalTree tree =
                frugal::tree_from_text(slurp(classify_tree), cases.cues);
            std::vector<std::vector<std::string>> rows{{"id", "label", "cues_consulted"}};
            for (std::size_t i = 0; i < cases.ids.size(); ++i) {
                const frugal::ClassificationOutcome outcome = frugal::fft_classify(
                    tree, cases.values.row(static_cast<Eigen::Index>(i)).transpose());
                rows.push_back({cases.ids[i],
                                outcome.label == frugal::Label::Positive ? "positive" : "negative",
                                std::to_string(outcome.cues_consulted)});
            }
            frugal::csv::write_file(classify_out, rows);
            say(global, "classified " + std::to_string(cases.ids.size()) + " cases to " + classify_out);
        } else if (assess->parsed()) {
            const frugal::BiblioWorld world =
                frugal::load_world_parts(std::nullopt, assess_institutions, assess_papers);
            std::vector<std::vector<std::string>> rows{{"unit_id", "indicator", "value"}};
            for (const auto& inst : world.institutions) {
                const frugal::InstitutionAssessment result =
                    frugal::assess_institution(inst, world.distribution, assess_x, assess_top);
                rows.push_back({inst.id, "pptop_share", frugal::csv::format_sig6(result.share)});
                rows.push_back({inst.id, "above_average",
                                result.verdict == frugal::InstitutionVerdict::AboveAverage ? "1" : "0"});
                rows.push_back({inst.id, "year_min", std::to_string(result.year_min)});
                rows.push_back({inst.id, "year_max", std::to_string(result.year_max)});
            }
            frugal::csv::write_file(assess_out, rows);
            say(global, "assessed " + std::to_string(world.institutions.size()) +
                            " institutions to " + assess_out);
        } else if (preselect->parsed()) {
            const frugal::BiblioWorld world =
                frugal::load_world_parts(preselect_researchers, std::nullopt, preselect_papers);
            std::vector<frugal::ResearcherRecord> shortlist =
                frugal::preselect_candidates(world.researchers, preselect_k);
            if (preselect_min_citations) {
                frugal::RefineRule rule;
                rule.kind = frugal::RefineRule::Kind::MinCitations;
                rule.min_citations = *preselect_min_citations;
                shortlist = frugal::refine_preselection(shortlist, world.distribution, rule);
            }
            std::vector<std::vector<std::string>> rows{{"id", "phd_publications", "total_citations"}};
            for (const auto& candidate : shortlist) {
                const frugal::YearWindow phd{candidate.phd_start, candidate.phd_end};
                long citations = 0;
                for (const auto& paper : candidate.papers) citations += paper.citations;
                rows.push_back({candidate.id,
                                std::to_string(frugal::count_publications(candidate, phd)),
                                std::to_string(citations)});
            }
            frugal::csv::write_file(preselect_out, rows);
            say(global, "shortlisted " + std::to_string(shortlist.size()) + " of " +
                            std::to_string(world.researchers.size()) + " researchers to " +
                            preselect_out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
