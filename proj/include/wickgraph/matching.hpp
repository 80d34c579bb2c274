#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "wickgraph/colored_graph.hpp"

namespace wickgraph {

// Raised when a cache or checkpoint file is unreadable, truncated, or
// fails its checksum.
struct CacheError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A perfect matching on {0,...,2m-1}, stored as a partner involution.
// Serves as the extra color-0 pairing laid on top of a ColoredGraph.
struct Matching {
    std::vector<int> partner;

    static Matching from_partner(std::vector<int> partner);
    static Matching from_edges(int m, const EdgeList& edges);

    int m() const { return (int)partner.size() / 2; }
    // Normalized (min,max) pairs sorted by first vertex.
    EdgeList edges() const;

    bool operator==(const Matching&) const = default;
};

// Identifier of the fixed enumeration rule below. Stored in cache and
// checkpoint headers so stale files are rejected if the rule ever changes.
inline constexpr std::uint32_t kEnumerationRuleId = 1;

// Largest m for which (2m-1)!! fits comfortably in uint64 bookkeeping.
inline constexpr int kMaxEnumerationM = 16;

// (2m-1)!! = number of perfect matchings on 2m vertices; 1 for m = 0.
std::uint64_t matching_count(int m);

// Visits every perfect matching on 2m vertices exactly once, in the fixed
// enumeration order: repeatedly take the lowest unmatched vertex and try
// each available partner in increasing order. The callback receives the
// partner array (valid only during the call) and the matching's rank.
using MatchingVisitor = std::function<void(const std::vector<int>& partner, std::uint64_t rank)>;

void for_each_matching(int m, const MatchingVisitor& visit);

// Same order, restricted to ranks in [lo, hi). Subtrees wholly outside the
// window are skipped, so sharding the range costs no duplicate work.
void for_each_matching_range(int m, std::uint64_t lo, std::uint64_t hi,
                             const MatchingVisitor& visit);

std::vector<Matching> all_matchings(int m);

// Position of the matching in the enumeration order, and its inverse.
std::uint64_t matching_rank(const Matching& matching);
Matching matching_at(int m, std::uint64_t rank);

// The two fixed matchings whose union is the ring 0-1-2-...-(2m-1)-0:
// even pairs {0,1},{2,3},... and odd pairs {1,2},{3,4},...,{2m-1,0}.
Matching ring_even_matching(int m);
Matching ring_odd_matching(int m);

// The color-c edges of g reused verbatim as a matching.
Matching parallel_matching(const ColoredGraph& g, int color);

// Cycle count of the union of two partner involutions over the same
// vertices. The building block of every face count here.
int union_cycles(const std::vector<int>& a, const std::vector<int>& b);

// F(M,G): number of faces involving the matching M laid on top of g as a
// fourth color, i.e. the cycle count of M ∪ E_1 plus M ∪ E_2 plus M ∪ E_3.
int faces_with_color0(const ColoredGraph& g, const Matching& m0);

struct MaxFaceResult {
    int max_f = 0;
    Matching witness;                      // first maximizer in enumeration order
    std::uint64_t maximizer_count = 0;     // matchings attaining max_f
    std::uint64_t matchings_examined = 0;  // fully evaluated leaves
    std::uint64_t nodes_pruned = 0;        // subtrees or table rows skipped
    bool complete = true;                  // false if a budget stopped the search
};

struct MaxFaceOptions {
    bool prune = true;             // admissible bound: faces closed so far + 3*edges left
    std::uint64_t node_budget = 0; // 0 = unlimited; else result may be a lower bound
};

// Exact max of F(M,G) over all perfect matchings, by backtracking over
// partial matchings with one rollback union-find per color. Pruning is
// strict (discard only when the bound cannot reach the incumbent), so the
// witness and maximizer_count match the unpruned search exactly.
MaxFaceResult max_faces(const ColoredGraph& g, const MaxFaceOptions& opts = {});

// Dense table of the two partial face counts of every matching against the
// fixed ring pair, indexed by enumeration rank. Lets a survey over graphs
// that share those two colors skip recomputing them per graph.
class PartialFaceTable {
  public:
    static constexpr std::size_t kDefaultMemoryCap = std::size_t(1) << 30;

    // Enumerates all (2m-1)!! matchings once. Throws CapacityError if the
    // table would exceed memory_cap bytes.
    static PartialFaceTable build(int m, std::size_t memory_cap = kDefaultMemoryCap);

    static PartialFaceTable load(const std::string& path,
                                 std::size_t memory_cap = kDefaultMemoryCap);
    void save(const std::string& path) const;

    int m() const { return m_; }
    std::uint64_t size() const { return f_even_.size(); }

    // Face count of the matching at `rank` with the even / odd ring matching.
    int faces_even(std::uint64_t rank) const { return f_even_[rank]; }
    int faces_odd(std::uint64_t rank) const { return f_odd_[rank]; }

  private:
    PartialFaceTable() = default;
    int m_ = 0;
    std::vector<std::uint8_t> f_even_, f_odd_;
};

// max_faces specialized to survey graphs: g's color-1 and color-2 edges
// must equal the even/odd ring matchings of the table. Scans the table,
// skipping rank r when faces_even(r)+faces_odd(r)+n cannot reach the
// incumbent; only survivors get their third face count walked. Agrees with
// max_faces on max_f, witness, and maximizer_count.
MaxFaceResult max_faces_with_table(const ColoredGraph& g, const PartialFaceTable& table);

}  // namespace wickgraph
