#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wickgraph/canonical.hpp"
#include "wickgraph/colored_graph.hpp"
#include "wickgraph/matching.hpp"

namespace wickgraph {

// What the sweep ranges over and which candidates survive to the dedup:
//   single_face_pair — colors 1,2 fixed to the ring matchings (so their
//                      common face count is 1 by construction), color 3
//                      sweeps all matchings;
//   mst_only         — same sweep, but only candidates whose remaining two
//                      face counts are also 1 are kept;
//   all_colored      — color 1 fixed, colors 2 and 3 both sweep; counts
//                      connected classes (the general census).
enum class SurveyMode : std::uint8_t { single_face_pair, mst_only, all_colored };

std::string to_string(SurveyMode mode);
SurveyMode survey_mode_from_string(const std::string& name);

struct SurveyConfig {
    int n = 1;
    SurveyMode mode = SurveyMode::mst_only;
    int workers = 0;                        // 0: WICKGRAPH_WORKERS env, else hardware
    std::string checkpoint_path;            // empty: run without checkpoints
    std::uint64_t checkpoint_interval = 64; // work units between checkpoint writes
    std::uint64_t stop_after_units = 0;     // 0: run to completion; else stop early
    int max_n = 9;                          // hard cap (all_colored is capped at 5)
};

struct ClassRecord {
    CanonicalForm code;
    ColoredGraph graph;  // representative: lexicographically least partner arrays
    FaceProfile profile;
    bool mst = false;
    bool bipartite = false;
    int max_f = 0;
    bool violates = false;               // 2·max_f <= 3n
    std::optional<Matching> witness;     // retained for violators only
};

struct SurveyReport {
    SurveyConfig config;
    std::vector<ClassRecord> classes;  // sorted by canonical code
    std::map<int, std::uint64_t> max_f_hist;  // over all classes
    std::map<int, std::uint64_t> mst_hist;    // over MST classes
    std::uint64_t class_count = 0;
    std::uint64_t mst_count = 0;
    std::vector<std::size_t> violator_indices;  // into classes, code order
    std::uint64_t candidates_examined = 0;      // sweep stream length
    std::uint64_t scan_leaves = 0;              // matchings evaluated maximizing
    double runtime_seconds = 0.0;
    std::string tool_version;
    bool complete = true;  // false when stop_after_units ended the run early
};

// The two-phase sweep: enumerate candidates, dedup by canonical code
// keeping the least representative, then maximize faces once per class.
// The report is a pure function of (n, mode): worker count, checkpointing,
// and early stops never change a completed report.
SurveyReport run_survey(const SurveyConfig& config);

struct Violator {
    CanonicalForm code;
    ColoredGraph graph;
    int max_f = 0;
    Matching witness;
};

// Classes with max_f <= 3n/2, sorted by code, each re-verified by an
// independent unpruned search.
std::vector<Violator> find_violators(int n, int workers = 0);

struct FixtureCheck {
    int row = 0;  // 1-based position in the input list
    CanonicalForm code;
    bool connected = false;
    bool mst = false;
    bool non_bipartite = false;
    bool duplicate = false;  // same class as an earlier row
    int max_f = -1;          // exact maximum; -1 when a claim above failed
};

struct FixtureVerification {
    std::vector<FixtureCheck> rows;
    bool pairwise_distinct = true;
    bool all_pass = true;    // connected ∧ mst ∧ non_bipartite ∧ distinct, every row
    std::string failure;     // names the first failing row
};

FixtureVerification verify_fixture_set(const std::vector<ColoredGraph>& fixtures);

// Connected classes of the general two-color sweep; the census column of
// the survey table. The quadratic candidate space caps this at small n.
std::uint64_t count_colored_graphs(int n, int max_n = 5, int workers = 0);

}  // namespace wickgraph
