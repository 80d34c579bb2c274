#pragma once

#include <string>
#include <vector>

#include "wickgraph/colored_graph.hpp"

namespace wickgraph {

// Bundled catalog: the 41 sixteen-vertex graphs whose invariants fail
// large-N factorization, as compact-convention records (color-3 edges,
// 1-based; colors 1,2 are the fixed ring matchings).
const std::vector<std::string>& catalog_lines();

// All lines joined with newlines, trailing newline included; this is the
// byte string the pinned digest covers.
std::string catalog_text();

// SHA-256 (hex) the bundled text must hash to.
extern const char kCatalogSha256[];

// Digest of the current in-binary text; equals kCatalogSha256 unless the
// bundle was tampered with.
std::string catalog_computed_sha256();

bool catalog_intact();

// Parsed graphs, in catalog order. Throws if the bundle fails its digest.
std::vector<ColoredGraph> catalog_graphs();

}  // namespace wickgraph
