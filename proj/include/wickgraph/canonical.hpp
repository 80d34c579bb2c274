#pragma once

#include <string>
#include <vector>

#include "wickgraph/colored_graph.hpp"

namespace wickgraph {

// Canonical form of a colored graph under color-preserving isomorphism
// (vertex relabelings only; colors stay fixed). Two graphs are isomorphic
// exactly when their codes are equal.
struct CanonicalForm {
    // Byte string: for each component in sorted order, one byte for its
    // half-size k followed by the 6k partner bytes of the relabeled
    // component. Comparable with operator< for deterministic ordering.
    std::string code;
    int n = 0;

    bool operator==(const CanonicalForm&) const = default;
    auto operator<=>(const CanonicalForm&) const = default;

    std::string hex() const;
};

CanonicalForm canonical_form(const ColoredGraph& g);

// A relabeling perm with relabel(g, perm) in canonical form (its partner
// serialization equals the code minus framing). For connected graphs this
// is the breadth-first labeling from the best root.
std::vector<int> canonical_labeling(const ColoredGraph& g);

bool is_isomorphic(const ColoredGraph& g, const ColoredGraph& h);

// Minimum of canonical_form over the six relabelings of the colors; only
// for reporting which classes merge when colors are interchangeable.
CanonicalForm color_orbit_form(const ColoredGraph& g);

// Reusable scratch for the hot path: computes codes straight from partner
// arrays without building a ColoredGraph. Only valid for connected inputs
// with 2n < 256 (one byte per label). Not thread-safe; use one per thread.
class Canonicalizer {
  public:
    // p1,p2,p3 point at 2n-entry partner arrays.
    const std::string& code_of_partners(int n, const int* p1, const int* p2, const int* p3);

  private:
    std::vector<int> label_, order_;
    std::string best_, cur_;
};

}  // namespace wickgraph
