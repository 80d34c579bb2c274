#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "test_util.hpp"
#include "wickgraph/canonical.hpp"
#include "wickgraph/cli.hpp"
#include "wickgraph/digest.hpp"
#include "wickgraph/fixtures.hpp"
#include "wickgraph/graph_io.hpp"
#include "wickgraph/matching.hpp"
#include "wickgraph/report_json.hpp"
#include "wickgraph/survey.hpp"

using namespace wickgraph;
using namespace wickgraph::testutil;

namespace {

ColoredGraph ring_graph(int n, const std::vector<int>& e3) {
    return ColoredGraph::from_partners(
        {ring_even_matching(n).partner, ring_odd_matching(n).partner, e3});
}

int run_argv(std::initializer_list<const char*> args) {
    std::vector<char*> argv;
    for (const char* a : args) argv.push_back(const_cast<char*>(a));
    return run_cli((int)argv.size(), argv.data());
}

}  // namespace

TEST_CASE("compact records synthesize the ring colors") {
    ColoredGraph triple = parse_graph("n=1; 3: {1,2}");
    CHECK(triple == n1_graph());

    ColoredGraph g = parse_graph("n=2; 3: {1,3},{2,4}");
    CHECK(g.partners(1) == ring_even_matching(2).partner);
    CHECK(g.partners(2) == ring_odd_matching(2).partner);
    CHECK(g.edges(3) == EdgeList{{0, 2}, {1, 3}});
    CHECK(is_isomorphic(g, tetrahedron()));

    GraphRecord rec = parse_record("n=8; 3: {1,3},{2,6},{4,8},{5,12},{7,9},{10,14},{11,16},{13,15}");
    CHECK(rec.n == 8);
    CHECK(rec.convention == GraphConvention::compact);
    CHECK(rec.edges[0].empty());
    CHECK(graph_from_record(rec) == catalog_graphs().front());
}

TEST_CASE("explicit records carry all three colors zero-based") {
    std::string text = serialize_graph(tetrahedron(), GraphConvention::explicit_colors);
    CHECK(text.find("1:") != std::string::npos);
    CHECK(text.find("2:") != std::string::npos);
    CHECK(text.find("3:") != std::string::npos);
    CHECK(parse_graph(text) == tetrahedron());
    // tetrahedron's color 2 is not the odd ring, so compact output is refused
    CHECK_THROWS_WITH_AS(serialize_graph(tetrahedron(), GraphConvention::compact),
                         doctest::Contains("explicit"), ValidationError);
}

TEST_CASE("serialize then parse is the identity on random graphs") {
    std::mt19937_64 rng(2026);
    for (int n = 1; n <= 6; ++n) {
        for (int trial = 0; trial < 20; ++trial) {
            ColoredGraph g = random_colored_graph(n, rng);
            std::string text = serialize_graph(g, GraphConvention::explicit_colors);
            CHECK(parse_graph(text) == g);
            CHECK(serialize_graph(parse_graph(text), GraphConvention::explicit_colors) == text);

            ColoredGraph r = ring_graph(n, random_matching_partners(n, rng));
            std::string compact = serialize_graph(r, GraphConvention::compact);
            CHECK(parse_graph(compact) == r);
            CHECK(serialize_graph(parse_graph(compact), GraphConvention::compact) == compact);
        }
    }
}

TEST_CASE("parse then serialize normalizes pair and row order") {
    const std::string scrambled =
        "n=8; 3: {2,12},{4,8},{5,16},{6,11},{7,9},{10,14},{13,15},{1,3}";
    const std::string& row41 = catalog_lines().back();
    CHECK(serialize_graph(parse_graph(scrambled), GraphConvention::compact) == row41 + "\n");
    CHECK(parse_graph(scrambled) == catalog_graphs().back());

    for (const std::string& line : catalog_lines())
        CHECK(serialize_graph(parse_graph(line), GraphConvention::compact) == line + "\n");
}

TEST_CASE("malformed records report line and column") {
    // duplicate vertex: the second '3' sits at column 18
    try {
        parse_graph("n=2; 3: {1,3},{2,3}");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
        CHECK(e.column == 18);
        CHECK(std::string(e.what()).find("vertex 3") != std::string::npos);
    }

    // out-of-range label in a multi-line explicit record
    try {
        parse_graph("n=2\n1: {0,1},{2,3}\n2: {1,2},{3,0}\n3: {0,2},{1,7}\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 4);
        CHECK(e.column > 0);
    }

    CHECK_THROWS_AS(parse_graph("n=2; 3: {1 3},{2,4}"), ParseError);
    CHECK_THROWS_AS(parse_graph("n=2; 3: {1,3}"), ParseError);      // half-matched
    CHECK_THROWS_AS(parse_graph("n=0; 3:"), ParseError);
    CHECK_THROWS_AS(parse_graph(""), ParseError);
    // forcing the wrong convention is an error, not a guess
    CHECK_THROWS_AS(parse_graph("n=1; 3: {1,2}", GraphConvention::explicit_colors), ParseError);
}

TEST_CASE("catalog bundle digest is pinned") {
    CHECK(catalog_intact());
    CHECK(catalog_computed_sha256() == kCatalogSha256);
    CHECK(catalog_graphs().size() == 41);
    CHECK(catalog_lines().size() == 41);

    // reference vectors for the digest itself
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    // any tamper moves the digest off the pin
    std::string tampered = catalog_text();
    tampered[tampered.find("{1,3}") + 1] = '2';
    CHECK(sha256_hex(tampered) != kCatalogSha256);
}

TEST_CASE("report envelopes validate against the shipped schema") {
    SurveyConfig cfg;
    cfg.n = 2;
    cfg.workers = 1;
    std::vector<Json> reports;
    reports.push_back(survey_report_json(run_survey(cfg)));
    reports.push_back(fixture_verification_json(
        verify_fixture_set({catalog_graphs().front()}), "embedded"));
    ColoredGraph tetra = tetrahedron();
    reports.push_back(max_faces_json(tetra, max_faces(tetra), true));
    reports.push_back(certificate_json(tetra, certified_lower_bound(tetra)));
    MomentPolynomial poly = moment_polynomial(tetra);
    McOptions mopts;
    mopts.samples = 64;
    reports.push_back(moment_json(tetra, poly, 2.0, mc_estimate(tetra, mopts)));
    reports.push_back(canon_json(tetra));
    reports.push_back(census_json(2, count_colored_graphs(2)));

    for (const Json& report : reports) {
        std::string why;
        CHECK_MESSAGE(matches_schema(report, report_schema(), &why), why);
        CHECK(report["format_version"] == kReportFormatVersion);
        CHECK(report["provenance"]["tool"] == "wickgraph");
    }

    Json broken = reports.front();
    broken.erase("kind");
    std::string why;
    CHECK_FALSE(matches_schema(broken, report_schema(), &why));
    CHECK(why.find("kind") != std::string::npos);

    broken = reports.front();
    broken["kind"] = "banana";
    CHECK_FALSE(matches_schema(broken, report_schema(), &why));

    broken = reports.front();
    broken["format_version"] = "one";
    CHECK_FALSE(matches_schema(broken, report_schema(), &why));

    broken = reports.front();
    broken["format_version"] = 0;
    CHECK_FALSE(matches_schema(broken, report_schema(), &why));
}

TEST_CASE("schema file matches the embedded schema") {
    std::ifstream in(std::string(WICKGRAPH_SOURCE_DIR) + "/schema/report.schema.json");
    REQUIRE(in.good());
    CHECK(Json::parse(in) == report_schema());
}

TEST_CASE("survey JSON mirrors the report with wire labels") {
    SurveyConfig cfg;
    cfg.n = 3;
    cfg.mode = SurveyMode::single_face_pair;
    cfg.workers = 1;
    SurveyReport report = run_survey(cfg);
    Json j = survey_report_json(report);

    const Json& classes = j["results"]["classes"];
    REQUIRE(classes.size() == report.classes.size());
    CHECK(j["results"]["class_count"] == report.class_count);
    for (std::size_t i = 0; i < report.classes.size(); ++i) {
        const Json& c = classes[i];
        CHECK(c["code"] == report.classes[i].code.hex());
        ColoredGraph back = parse_graph(c["graph"].get<std::string>());
        CHECK(canonical_form(back).hex() == c["code"]);
        CHECK(c["max_f"] == report.classes[i].max_f);
    }

    // matchings and flips are written 1-based like the graph text
    Json mf = max_faces_json(tetrahedron(), max_faces(tetrahedron()), true);
    std::vector<int> seen;
    for (const auto& pair : mf["results"]["witness"])
        for (const auto& v : pair) seen.push_back(v.get<int>());
    std::sort(seen.begin(), seen.end());
    CHECK(seen == std::vector<int>{1, 2, 3, 4});
}

TEST_CASE("cli subcommands return contract exit codes") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "wickgraph_cli_test";
    fs::create_directories(dir);
    const std::string graph_file = (dir / "tetra.txt").string();
    {
        std::ofstream out(graph_file);
        out << "n=2; 3: {1,3},{2,4}\n";
    }

    CHECK(run_argv({"wickgraph", "survey", "--n", "2", "--workers", "1"}) == 0);
    CHECK(run_argv({"wickgraph", "max-faces", "--graph", graph_file.c_str()}) == 0);
    CHECK(run_argv({"wickgraph", "bound", "--graph", graph_file.c_str(), "--json"}) == 0);
    CHECK(run_argv({"wickgraph", "canon", "--graph", graph_file.c_str()}) == 0);
    CHECK(run_argv({"wickgraph", "count-classes", "--n", "2"}) == 0);

    const std::string out_file = (dir / "report.json").string();
    CHECK(run_argv({"wickgraph", "survey", "--n", "2", "--workers", "1", "--out",
                    out_file.c_str()}) == 0);
    {
        std::ifstream in(out_file);
        REQUIRE(in.good());
        std::string why;
        CHECK_MESSAGE(matches_schema(Json::parse(in), report_schema(), &why), why);
    }

    // usage errors
    CHECK(run_argv({"wickgraph"}) == 2);
    CHECK(run_argv({"wickgraph", "nope"}) == 2);
    CHECK(run_argv({"wickgraph", "survey", "--n", "0"}) == 2);
    CHECK(run_argv({"wickgraph", "survey", "--n", "2", "--mode", "everything"}) == 2);
    CHECK(run_argv({"wickgraph", "max-faces", "--graph", "/nonexistent/file"}) == 2);
    CHECK(run_argv({"wickgraph", "moment", "--graph", graph_file.c_str(), "--nu", "9"}) == 2);

    // verification failure: a fixture list with a duplicated row
    const std::string dup_file = (dir / "dup.txt").string();
    {
        std::ofstream out(dup_file);
        out << catalog_lines().front() << "\n" << catalog_lines().front() << "\n";
    }
    CHECK(run_argv({"wickgraph", "verify-fixtures", "--fixtures", dup_file.c_str()}) == 1);

    fs::remove_all(dir);
}
