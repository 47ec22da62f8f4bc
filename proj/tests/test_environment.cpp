#include <doctest.h>

#include "frugal/environment.hpp"
#include "frugal/errors.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace frugal;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

} // namespace

TEST_CASE("parse_environment_csv reads a three-row file") {
    const Environment env = parse_environment_csv("id,a,b,y\no1,1,0,1\no2,0,0,0\no3,1,1,1\n", "y");
    CHECK(env.n_objects() == 3);
    CHECK(env.n_cues() == 2);
    CHECK(env.objects == std::vector<std::string>{"o1", "o2", "o3"});
    CHECK(env.cues[0].name == "a");
    CHECK(env.cues[1].name == "b");
    CHECK(env.cues[0].direction == +1); // defaults without a direction row
    CHECK(env.cues[0].kind == CueKind::Binary);
    CHECK(env.criterion(0) == 1);
    CHECK(env.criterion(1) == 0);
    CHECK(env.criterion(2) == 1);
    CHECK(env.values(2, 1) == 1.0);
}

TEST_CASE("non-binary criterion is a schema error naming the row") {
    try {
        parse_environment_csv("id,a,y\no1,1,1\no2,0,2\n", "y");
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        const std::string what = e.what();
        CHECK(what.find("row 3") != std::string::npos); // 1-based file row of o2
    }
}

TEST_CASE("direction row parses and applies per cue") {
    const Environment env =
        parse_environment_csv("id,a,b,y\ndirection,+1,-1,\no1,1,0,1\no2,0,1,0\n", "y");
    CHECK(env.cues[0].direction == +1);
    CHECK(env.cues[1].direction == -1);
}

TEST_CASE("schema errors: duplicate cue, bad cell, missing criterion, short row") {
    CHECK_THROWS_AS(parse_environment_csv("id,a,a,y\no1,1,1,1\no2,0,0,0\n", "y"), SchemaError);
    CHECK_THROWS_AS(parse_environment_csv("id,a,y\no1,huh,1\no2,0,0\n", "y"), SchemaError);
    CHECK_THROWS_AS(parse_environment_csv("id,a,b\no1,1,0\no2,0,1\n", "y"), SchemaError);
    CHECK_THROWS_AS(parse_environment_csv("id,a,y\no1,1\no2,0,0\n", "y"), ParseError);
    // A bad numeric cell names both its row and its column.
    try {
        parse_environment_csv("id,a,b,y\no1,1,0,1\no2,0,oops,0\n", "y");
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        const std::string what = e.what();
        CHECK(what.find("row 3") != std::string::npos);
        CHECK(what.find("b") != std::string::npos);
    }
}

TEST_CASE("numeric cues are classified as numeric") {
    const Environment env = parse_environment_csv("id,a,y\no1,0.25,1\no2,2.5,0\n", "y");
    CHECK(env.cues[0].kind == CueKind::Numeric);
}

TEST_CASE("environment validation rejects structural breakage") {
    Environment env = parse_environment_csv("id,a,y\no1,1,1\no2,0,0\n", "y");
    env.validate();

    Environment too_few = env;
    too_few.objects = {"o1"};
    too_few.values = env.values.topRows(1);
    too_few.criterion = env.criterion.head(1);
    CHECK_THROWS_AS(too_few.validate(), SchemaError);

    Environment bad_label = env;
    bad_label.criterion(0) = 7;
    CHECK_THROWS_AS(bad_label.validate(), SchemaError);

    Environment dup_ids = env;
    dup_ids.objects = {"o1", "o1"};
    CHECK_THROWS_AS(dup_ids.validate(), SchemaError);

    Environment nonfinite = env;
    nonfinite.values(0, 0) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(nonfinite.validate(), SchemaError);
}

TEST_CASE("cue_index finds cues by name") {
    const Environment env = parse_environment_csv("id,a,b,y\no1,1,0,1\no2,0,1,0\n", "y");
    CHECK(env.cue_index("b") == 1);
    CHECK_THROWS_AS(env.cue_index("zzz"), SchemaError);
}

TEST_CASE("environment CSV round-trips exactly through a file") {
    Environment env = parse_environment_csv(
        "id,a,b,y\ndirection,+1,-1,\no1,0.1,3.25,1\no2,-2.5,0.3333333333333333,0\no3,17,0,1\n",
        "y");
    const std::string path = temp_path("frugal_test_roundtrip.csv");
    write_environment_csv(path, env, "y");
    const Environment back = load_environment(path, "y");
    CHECK(back.objects == env.objects);
    REQUIRE(back.n_cues() == env.n_cues());
    for (Eigen::Index j = 0; j < env.n_cues(); ++j) {
        CHECK(back.cues[static_cast<std::size_t>(j)].name ==
              env.cues[static_cast<std::size_t>(j)].name);
        CHECK(back.cues[static_cast<std::size_t>(j)].direction ==
              env.cues[static_cast<std::size_t>(j)].direction);
    }
    CHECK(back.values == env.values); // bit-exact via full-precision formatting
    CHECK(back.criterion == env.criterion);

    // Re-writing the loaded environment reproduces the file byte for byte.
    const std::string path2 = temp_path("frugal_test_roundtrip2.csv");
    write_environment_csv(path2, back, "y");
    CHECK(read_file(path) == read_file(path2));
    std::remove(path.c_str());
    std::remove(path2.c_str());
}

TEST_CASE("the shipped coronary-care fixture loads") {
    const Environment env =
        load_environment(std::string(FRUGAL_DATA_DIR) + "/green_mehr.csv", "admit");
    CHECK(env.n_objects() == 128);
    CHECK(env.n_cues() == 7);
    for (const CueDefinition& cue : env.cues) CHECK(cue.kind == CueKind::Binary);
    CHECK(env.cues[0].name == "st_change");
    CHECK(env.cues[1].name == "chest_pain_chief");
}

TEST_CASE("split_environment partitions 10 objects into 5 + 5") {
    std::ostringstream csv;
    csv << "id,a,y\n";
    for (int i = 0; i < 10; ++i) csv << "o" << i << "," << i % 2 << "," << i % 2 << "\n";
    const Environment env = parse_environment_csv(csv.str(), "y");

    const SplitPair split = split_environment(env, 0.5, 7);
    CHECK(split.train.n_objects() == 5);
    CHECK(split.test.n_objects() == 5);
    CHECK(split.seed == 7);

    std::set<std::string> all(split.train.objects.begin(), split.train.objects.end());
    for (const std::string& id : split.test.objects) CHECK(all.insert(id).second); // disjoint
    CHECK(all.size() == 10);

    // Cue lists shared verbatim.
    CHECK(split.train.cues[0].name == env.cues[0].name);
    CHECK(split.test.cues[0].name == env.cues[0].name);

    // Rows carry their values and labels with them.
    for (Eigen::Index i = 0; i < split.train.n_objects(); ++i) {
        const std::string& id = split.train.objects[static_cast<std::size_t>(i)];
        const int original = id[1] - '0';
        CHECK(split.train.values(i, 0) == original % 2);
        CHECK(split.train.criterion(i) == original % 2);
    }
}

TEST_CASE("split_environment is deterministic per seed") {
    std::ostringstream csv;
    csv << "id,a,y\n";
    for (int i = 0; i < 12; ++i) csv << "o" << i << "," << i % 2 << "," << i % 2 << "\n";
    const Environment env = parse_environment_csv(csv.str(), "y");
    const SplitPair first = split_environment(env, 0.5, 99);
    const SplitPair second = split_environment(env, 0.5, 99);
    CHECK(first.train.objects == second.train.objects);
    CHECK(first.test.objects == second.test.objects);
    CHECK(first.train.values == second.train.values);
    const SplitPair other = split_environment(env, 0.5, 100);
    CHECK(first.train.objects != other.train.objects); // different seed, different cut
}

TEST_CASE("split_environment rejects sides smaller than two objects") {
    const Environment three = parse_environment_csv("id,a,y\no1,1,1\no2,0,0\no3,1,1\n", "y");
    CHECK_THROWS_AS(split_environment(three, 0.5, 1), PreconditionError);
    std::ostringstream csv;
    csv << "id,a,y\n";
    for (int i = 0; i < 10; ++i) csv << "o" << i << "," << i % 2 << "," << i % 2 << "\n";
    const Environment ten = parse_environment_csv(csv.str(), "y");
    CHECK_THROWS_AS(split_environment(ten, 0.05, 1), PreconditionError);
    CHECK_THROWS_AS(split_environment(ten, 0.95, 1), PreconditionError);
}

TEST_CASE("split sampling is fair across seeds") {
    std::ostringstream csv;
    csv << "id,a,y\n";
    for (int i = 0; i < 10; ++i) csv << "o" << i << "," << i % 2 << "," << i % 2 << "\n";
    const Environment env = parse_environment_csv(csv.str(), "y");

    std::map<std::string, int> train_hits;
    const int n_seeds = 1000;
    for (int seed = 0; seed < n_seeds; ++seed) {
        const SplitPair split = split_environment(env, 0.5, static_cast<std::uint64_t>(seed));
        for (const std::string& id : split.train.objects) ++train_hits[id];
    }
    for (int i = 0; i < 10; ++i) {
        const double freq = train_hits["o" + std::to_string(i)] / static_cast<double>(n_seeds);
        CHECK(freq == doctest::Approx(0.5).epsilon(0.1)); // 0.5 +- 0.05
    }
}

TEST_CASE("take_rows keeps the requested rows in the requested order") {
    const Environment env =
        parse_environment_csv("id,a,y\no1,1,1\no2,2,0\no3,3,1\no4,4,0\n", "y");
    const Environment sub = take_rows(env, {3, 0});
    CHECK(sub.objects == std::vector<std::string>{"o4", "o1"});
    CHECK(sub.values(0, 0) == 4.0);
    CHECK(sub.values(1, 0) == 1.0);
    CHECK(sub.criterion(0) == 0);
    CHECK(sub.criterion(1) == 1);
}
