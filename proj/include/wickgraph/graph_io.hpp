#pragma once

#include <array>
#include <string>

#include "wickgraph/colored_graph.hpp"

namespace wickgraph {

// Text conventions for colored graphs:
//  - compact: "n=8; 3: {1,3},{2,6},..." — only the color-3 edges, with
//    1-based vertex labels; colors 1 and 2 are implicitly the fixed ring
//    matchings {1,2},{3,4},... and {2,3},{4,5},...,{2n,1} (1-based).
//  - explicit_colors: "n=8" followed by three lines "c: {a,b},..." giving
//    every color's edges with 0-based labels.
enum class GraphConvention { compact, explicit_colors, auto_detect };

struct ParseError : std::runtime_error {
    int line = 0;    // 1-based
    int column = 0;  // 1-based
    ParseError(const std::string& msg, int line_, int column_);
};

// A graph as written: size, convention, and the edge lists (all 0-based
// internally; compact records leave colors 1,2 empty).
struct GraphRecord {
    int n = 0;
    GraphConvention convention = GraphConvention::compact;
    std::array<EdgeList, 3> edges;

    bool operator==(const GraphRecord&) const = default;
};

GraphRecord parse_record(const std::string& text,
                         GraphConvention convention = GraphConvention::auto_detect);

// Normalized rendering: each pair (min,max), pairs sorted by first vertex,
// canonical spacing. parse(serialize(r)) == normalize(r).
std::string serialize_record(const GraphRecord& record);

ColoredGraph graph_from_record(const GraphRecord& record);
GraphRecord record_from_graph(const ColoredGraph& g, GraphConvention convention);

ColoredGraph parse_graph(const std::string& text,
                         GraphConvention convention = GraphConvention::auto_detect);
std::string serialize_graph(const ColoredGraph& g, GraphConvention convention);

}  // namespace wickgraph
