#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace frugal {

enum class CueKind { Binary, Numeric };

// A single predictor variable: its name, whether it is binary or numeric, and
// which direction points toward criterion-positive objects (+1 means higher
// values indicate the positive class).
struct CueDefinition {
    std::string name;
    CueKind kind = CueKind::Binary;
    int direction = +1;
};

// A task environment: a set of objects described by cue values together with a
// binary criterion label per object.  Immutable after construction; validate()
// enforces the structural invariants and is called by every factory in this
// library.
struct Environment {
    std::vector<std::string> objects;   // object ids, one per row
    std::vector<CueDefinition> cues;    // one per column
    Eigen::MatrixXd values;             // objects x cues
    Eigen::VectorXi criterion;          // {0,1}, one per object

    Eigen::Index n_objects() const { return values.rows(); }
    Eigen::Index n_cues() const { return values.cols(); }

    // Throws SchemaError when any structural invariant is violated.
    void validate() const;

    // Index of the cue with the given name; throws SchemaError if absent.
    Eigen::Index cue_index(const std::string& name) const;
};

// A disjoint train/test partition of one environment, tagged with the seed
// that produced it.
struct SplitPair {
    Environment train;
    Environment test;
    std::uint64_t seed = 0;
};

// Reads an environment from CSV.  The first row is `id,<cue...>,<criterion>`;
// an optional second row `direction,+1|-1,...` assigns cue directions.  The
// criterion column is located by name and must contain only 0/1.
Environment load_environment(const std::string& path, const std::string& criterion_column);

// Parses the same schema from an in-memory string (used by load_environment
// and by tests that do not want to touch the filesystem).
Environment parse_environment_csv(const std::string& text, const std::string& criterion_column);

// Writes an environment back out in the schema accepted by load_environment,
// including the direction row.  Values are written with full precision so a
// round-trip reproduces the matrix exactly.
void write_environment_csv(const std::string& path, const Environment& env,
                           const std::string& criterion_column);

// Uniform random partition without replacement; deterministic per seed.
// Requires floor(train_fraction * n) >= 2 and the remainder >= 2.
SplitPair split_environment(const Environment& env, double train_fraction, std::uint64_t seed);

// Restricts an environment to the given object rows (indices into env),
// preserving cue definitions and row order as listed.
Environment take_rows(const Environment& env, const std::vector<Eigen::Index>& rows);

} // namespace frugal
