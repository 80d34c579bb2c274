#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wickgraph {

// Edges are unordered vertex pairs; helpers below normalize to (min,max).
using Edge = std::pair<int, int>;
using EdgeList = std::vector<Edge>;

// Raised when input fails structural validation (not a perfect matching,
// label out of range, size mismatch). The message names the offending
// color and vertex.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a computation would exceed a configured resource limit.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A 3-regular properly 3-edge-colored multigraph on vertices 0..2n-1,
// stored as one perfect matching (partner involution) per color 1,2,3.
// Parallel edges are allowed: distinct colors may join the same pair of
// vertices (for n=1 all three edges are parallel). Immutable once built.
class ColoredGraph {
  public:
    // Each list must be a perfect matching on {0,...,2n-1}.
    static ColoredGraph from_edges(int n, const EdgeList& e1, const EdgeList& e2,
                                   const EdgeList& e3);
    // partner[c][v] = vertex joined to v by the color-(c+1) edge.
    static ColoredGraph from_partners(std::array<std::vector<int>, 3> partner);

    int n() const { return n_; }
    int vertex_count() const { return 2 * n_; }

    // color in {1,2,3}
    int partner(int color, int v) const { return partner_[color - 1][v]; }
    const std::vector<int>& partners(int color) const { return partner_[color - 1]; }

    // Edges of one color, normalized: (min,max) pairs sorted by first vertex.
    EdgeList edges(int color) const;

    bool operator==(const ColoredGraph&) const = default;

  private:
    ColoredGraph(int n, std::array<std::vector<int>, 3> partner)
        : n_(n), partner_(std::move(partner)) {}

    int n_ = 0;
    std::array<std::vector<int>, 3> partner_;
};

// Face counts of the three bicolored 2-regular subgraphs, plus the two
// global flags that the classification cares about.
struct FaceProfile {
    int f12 = 0;
    int f13 = 0;
    int f23 = 0;
    bool connected = false;
    bool bipartite = false;

    bool operator==(const FaceProfile&) const = default;
};

// Number of cycles of the union of the color-i and color-j matchings.
int count_faces(const ColoredGraph& g, int color_i, int color_j);

// The (i,j)-faces as vertex cycles in a fixed orientation: each cycle
// starts at its smallest vertex and steps along its color-i edge first, so
// (cycle[2t], cycle[2t+1]) has color i and (cycle[2t+1], cycle[2t+2 mod len])
// has color j. Cycles are listed by smallest vertex. A parallel-edge face
// appears as a length-2 cycle.
std::vector<std::vector<int>> face_cycles(const ColoredGraph& g, int color_i, int color_j);

FaceProfile face_profile(const ColoredGraph& g);

bool is_connected(const ColoredGraph& g);
bool is_bipartite(const ColoredGraph& g);

// Maximally single trace: every bicolored face count equals 1.
bool is_mst(const ColoredGraph& g);

// G ⊔ H with H's vertices shifted up by g.vertex_count().
ColoredGraph disjoint_union(const ColoredGraph& g, const ColoredGraph& h);

// Relabel vertices: vertex v of g becomes perm[v]. perm must be a
// permutation of 0..2n-1.
ColoredGraph relabel(const ColoredGraph& g, const std::vector<int>& perm);

}  // namespace wickgraph
