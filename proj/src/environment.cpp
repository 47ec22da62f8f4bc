#include "frugal/environment.hpp"

#include "frugal/csv.hpp"
#include "frugal/errors.hpp"
#include "frugal/rng.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace frugal {

void Environment::validate() const {
    const auto n = static_cast<Eigen::Index>(objects.size());
    if (values.rows() != n)
        throw SchemaError("environment has " + std::to_string(objects.size()) + " object ids but " +
                          std::to_string(values.rows()) + " value rows");
    if (criterion.size() != n)
        throw SchemaError("environment has " + std::to_string(objects.size()) + " objects but " +
                          std::to_string(criterion.size()) + " criterion labels");
    if (values.cols() != static_cast<Eigen::Index>(cues.size()))
        throw SchemaError("environment has " + std::to_string(cues.size()) + " cue definitions but " +
                          std::to_string(values.cols()) + " value columns");
    if (n < 2) throw SchemaError("environment needs at least 2 objects");
    if (cues.empty()) throw SchemaError("environment needs at least 1 cue");
    std::set<std::string> names;
    for (const auto& cue : cues) {
        if (!names.insert(cue.name).second)
            throw SchemaError("duplicate cue name '" + cue.name + "'");
        if (cue.direction != +1 && cue.direction != -1)
            throw SchemaError("cue '" + cue.name + "' has direction " +
                              std::to_string(cue.direction) + "; must be +1 or -1");
    }
    std::set<std::string> ids;
    for (const auto& id : objects)
        if (!ids.insert(id).second) throw SchemaError("duplicate object id '" + id + "'");
    if (!values.allFinite()) {
        for (Eigen::Index i = 0; i < values.rows(); ++i)
            for (Eigen::Index j = 0; j < values.cols(); ++j)
                if (!std::isfinite(values(i, j)))
                    throw SchemaError("non-finite value at row " + std::to_string(i + 1) +
                                      ", column '" + cues[static_cast<std::size_t>(j)].name + "'");
    }
    for (Eigen::Index i = 0; i < criterion.size(); ++i)
        if (criterion(i) != 0 && criterion(i) != 1)
            throw SchemaError("criterion label " + std::to_string(criterion(i)) + " at row " +
                              std::to_string(i + 1) + " is not 0 or 1");
}

Eigen::Index Environment::cue_index(const std::string& name) const {
    for (std::size_t j = 0; j < cues.size(); ++j)
        if (cues[j].name == name) return static_cast<Eigen::Index>(j);
    throw SchemaError("no cue named '" + name + "'");
}

Environment parse_environment_csv(const std::string& text, const std::string& criterion_column) {
    csv::Table table = csv::parse(text);
    if (table.rows.empty()) throw ParseError("environment CSV has no rows");
    const auto& header = table.rows[0];
    if (header.size() < 3 || header[0] != "id")
        throw SchemaError("environment CSV header must be 'id,<cue...>,<criterion>'");

    // Locate the criterion column among the non-id columns.
    std::size_t crit_col = 0;
    for (std::size_t j = 1; j < header.size(); ++j)
        if (header[j] == criterion_column) crit_col = j;
    if (crit_col == 0)
        throw SchemaError("criterion column '" + criterion_column + "' not found in header");

    Environment env;
    for (std::size_t j = 1; j < header.size(); ++j) {
        if (j == crit_col) continue;
        CueDefinition cue;
        cue.name = header[j];
        env.cues.push_back(cue);
    }
    if (env.cues.empty()) throw SchemaError("environment CSV has no cue columns");

    // Optional direction row: starts with the literal token `direction`.
    std::size_t first_data = 1;
    if (table.rows.size() > 1 && !table.rows[1].empty() && table.rows[1][0] == "direction") {
        const auto& drow = table.rows[1];
        if (drow.size() != header.size())
            throw SchemaError("direction row has " + std::to_string(drow.size()) +
                              " fields; header has " + std::to_string(header.size()));
        std::size_t cue_pos = 0;
        for (std::size_t j = 1; j < drow.size(); ++j) {
            if (j == crit_col) continue;
            if (drow[j] == "+1" || drow[j] == "1")
                env.cues[cue_pos].direction = +1;
            else if (drow[j] == "-1")
                env.cues[cue_pos].direction = -1;
            else
                throw SchemaError("direction '" + drow[j] + "' for cue '" + env.cues[cue_pos].name +
                                  "' is not +1 or -1");
            ++cue_pos;
        }
        first_data = 2;
    }

    const std::size_t n_rows = table.rows.size() - first_data;
    if (n_rows < 2) throw SchemaError("environment CSV needs at least 2 data rows");
    env.values.resize(static_cast<Eigen::Index>(n_rows), static_cast<Eigen::Index>(env.cues.size()));
    env.criterion.resize(static_cast<Eigen::Index>(n_rows));

    for (std::size_t r = 0; r < n_rows; ++r) {
        const auto& row = table.rows[first_data + r];
        const std::size_t line_no = first_data + r + 1; // 1-based line in the file
        if (row.size() != header.size())
            throw ParseError("row " + std::to_string(line_no) + " has " + std::to_string(row.size()) +
                             " fields; header has " + std::to_string(header.size()));
        env.objects.push_back(row[0]);
        std::size_t cue_pos = 0;
        for (std::size_t j = 1; j < row.size(); ++j) {
            if (j == crit_col) {
                double v = csv::parse_double(row[j], line_no, header[j]);
                if (v != 0.0 && v != 1.0)
                    throw SchemaError("criterion value '" + row[j] + "' at row " +
                                      std::to_string(line_no) + " is not 0 or 1");
                env.criterion(static_cast<Eigen::Index>(r)) = static_cast<int>(v);
            } else {
                env.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(cue_pos)) =
                    csv::parse_double(row[j], line_no, header[j]);
                ++cue_pos;
            }
        }
    }

    // Classify each cue as binary when every observed value is 0 or 1.
    for (std::size_t j = 0; j < env.cues.size(); ++j) {
        const auto col = env.values.col(static_cast<Eigen::Index>(j));
        bool binary = true;
        for (Eigen::Index i = 0; i < col.size(); ++i)
            if (col(i) != 0.0 && col(i) != 1.0) { binary = false; break; }
        env.cues[j].kind = binary ? CueKind::Binary : CueKind::Numeric;
    }

    env.validate();
    return env;
}

Environment load_environment(const std::string& path, const std::string& criterion_column) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_environment_csv(buf.str(), criterion_column);
}

void write_environment_csv(const std::string& path, const Environment& env,
                           const std::string& criterion_column) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{"id"};
    for (const auto& cue : env.cues) header.push_back(cue.name);
    header.push_back(criterion_column);
    rows.push_back(header);

    std::vector<std::string> direction{"direction"};
    for (const auto& cue : env.cues) direction.push_back(cue.direction > 0 ? "+1" : "-1");
    direction.push_back("+1");
    rows.push_back(direction);

    for (Eigen::Index i = 0; i < env.n_objects(); ++i) {
        std::vector<std::string> row{env.objects[static_cast<std::size_t>(i)]};
        for (Eigen::Index j = 0; j < env.n_cues(); ++j)
            row.push_back(csv::format_exact(env.values(i, j)));
        row.push_back(std::to_string(env.criterion(i)));
        rows.push_back(std::move(row));
    }
    csv::write_file(path, rows);
}

Environment take_rows(const Environment& env, const std::vector<Eigen::Index>& rows) {
    Environment out;
    out.cues = env.cues;
    out.values.resize(static_cast<Eigen::Index>(rows.size()), env.n_cues());
    out.criterion.resize(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const Eigen::Index src = rows[r];
        if (src < 0 || src >= env.n_objects())
            throw PreconditionError("row index " + std::to_string(src) + " out of range");
        out.objects.push_back(env.objects[static_cast<std::size_t>(src)]);
        out.values.row(static_cast<Eigen::Index>(r)) = env.values.row(src);
        out.criterion(static_cast<Eigen::Index>(r)) = env.criterion(src);
    }
    out.validate();
    return out;
}

SplitPair split_environment(const Environment& env, double train_fraction, std::uint64_t seed) {
    env.validate();
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw PreconditionError("train_fraction must lie strictly between 0 and 1");
    const auto n = env.n_objects();
    const auto n_train = static_cast<Eigen::Index>(std::floor(train_fraction * static_cast<double>(n)));
    const auto n_test = n - n_train;
    if (n_train < 2 || n_test < 2)
        throw PreconditionError("split of " + std::to_string(n) + " objects at fraction " +
                                std::to_string(train_fraction) + " leaves fewer than 2 objects on one side");

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    Rng rng(seed);
    rng.shuffle(order);

    std::vector<Eigen::Index> train_rows(order.begin(), order.begin() + n_train);
    std::vector<Eigen::Index> test_rows(order.begin() + n_train, order.end());
    std::sort(train_rows.begin(), train_rows.end());
    std::sort(test_rows.begin(), test_rows.end());

    SplitPair pair;
    pair.train = take_rows(env, train_rows);
    pair.test = take_rows(env, test_rows);
    pair.seed = seed;
    return pair;
}

} // namespace frugal
