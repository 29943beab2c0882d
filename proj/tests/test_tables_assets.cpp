#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

#include "metrodose/tables.hpp"

using namespace metrodose;

namespace {
std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE_MESSAGE(bool(in), "cannot open ", path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::string strip_comments(const std::string& text) {
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line))
        if (line.empty() || line[0] != '#') out << line << '\n';
    return out.str();
}
}  // namespace

TEST_CASE("shipped CSV assets match the embedded expected values") {
    const std::string root = METRODOSE_SOURCE_DIR;
    for (int id : {2, 3, 4, 5}) {
        const std::string path = root + "/data/tables/table" + std::to_string(id) + ".csv";
        CHECK_MESSAGE(strip_comments(read_file(path)) == tables::expected_csv(id),
                      "asset drift in ", path);
    }
}

TEST_CASE("shipped benchmark config matches the embedded one") {
    const std::string root = METRODOSE_SOURCE_DIR;
    const RunConfig cfg = load_config_file(root + "/data/tmz.cfg");
    const RunConfig& ref = tables::tmz_reference_config();
    CHECK(cfg.pk.lambda == ref.pk.lambda);
    CHECK(cfg.pk.sigma == ref.pk.sigma);
    CHECK(cfg.pk.k1 == ref.pk.k1);
    CHECK(cfg.pk.k2 == ref.pk.k2);
    CHECK(cfg.tumor.xi == ref.tumor.xi);
    CHECK(cfg.tumor.l0_rel == ref.tumor.l0_rel);
    CHECK(cfg.horizon_T == ref.horizon_T);
    CHECK(cfg.bounds.d_min == ref.bounds.d_min);
    CHECK(cfg.bounds.d_max == ref.bounds.d_max);
    CHECK(cfg.bounds.cumulative_D == ref.bounds.cumulative_D);
    CHECK(cfg.pattern == ref.pattern);
    CHECK(cfg.l_star_rel == ref.l_star_rel);
}

TEST_CASE("table ids outside 2..5 are rejected") {
    CHECK_THROWS_AS(tables::reproduce_table(1), std::invalid_argument);
    CHECK_THROWS_AS(tables::expected_csv(6), std::invalid_argument);
}
