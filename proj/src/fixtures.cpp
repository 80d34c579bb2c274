#include "wickgraph/fixtures.hpp"

#include <sstream>

#include "wickgraph/digest.hpp"
#include "wickgraph/graph_io.hpp"

namespace wickgraph {

const char kCatalogSha256[] =
    "443fd0fc848dc528e94c76cb15deb37fb239f83b42ef2b2851dc7a5863242618";

const std::vector<std::string>& catalog_lines() {
    static const std::vector<std::string> lines = {
        "n=8; 3: {1,3},{2,6},{4,8},{5,12},{7,9},{10,14},{11,16},{13,15}",
        "n=8; 3: {1,3},{2,6},{4,8},{5,14},{7,9},{10,15},{11,13},{12,16}",
        "n=8; 3: {1,3},{2,6},{4,8},{5,13},{7,9},{10,12},{11,15},{14,16}",
        "n=8; 3: {1,3},{2,6},{4,8},{5,16},{7,13},{9,14},{10,12},{11,15}",
        "n=8; 3: {1,3},{2,6},{4,8},{5,16},{7,12},{9,11},{10,14},{13,15}",
        "n=8; 3: {1,3},{2,6},{4,8},{5,16},{7,11},{9,14},{10,12},{13,15}",
        "n=8; 3: {1,3},{2,6},{4,9},{5,7},{8,12},{10,14},{11,16},{13,15}",
        "n=8; 3: {1,3},{2,6},{4,9},{5,7},{8,14},{10,15},{11,13},{12,16}",
        "n=8; 3: {1,3},{2,6},{4,9},{5,7},{8,14},{10,12},{11,16},{13,15}",
        "n=8; 3: {1,3},{2,6},{4,9},{5,7},{8,12},{10,15},{11,13},{14,16}",
        "n=8; 3: {1,3},{2,6},{4,10},{5,16},{7,12},{8,14},{9,11},{13,15}",
        "n=8; 3: {1,3},{2,6},{4,10},{5,16},{7,15},{8,12},{9,14},{11,13}",
        "n=8; 3: {1,3},{2,6},{4,10},{5,16},{7,15},{8,13},{9,11},{12,14}",
        "n=8; 3: {1,3},{2,6},{4,11},{5,7},{8,16},{9,14},{10,12},{13,15}",
        "n=8; 3: {1,3},{2,6},{4,11},{5,16},{7,9},{8,14},{10,12},{13,15}",
        "n=8; 3: {1,3},{2,6},{4,12},{5,7},{8,14},{9,11},{10,16},{13,15}",
        "n=8; 3: {1,3},{2,6},{4,12},{5,16},{7,9},{8,14},{10,15},{11,13}",
        "n=8; 3: {1,3},{2,6},{4,13},{5,7},{8,16},{9,11},{10,15},{12,14}",
        "n=8; 3: {1,3},{2,6},{4,12},{5,16},{7,15},{8,10},{9,14},{11,13}",
        "n=8; 3: {1,3},{2,6},{4,14},{5,10},{7,9},{8,12},{11,16},{13,15}",
        "n=8; 3: {1,3},{2,6},{4,14},{5,16},{7,9},{8,13},{10,12},{11,15}",
        "n=8; 3: {1,3},{2,6},{4,15},{5,7},{8,10},{9,14},{11,13},{12,16}",
        "n=8; 3: {1,3},{2,6},{4,14},{5,16},{7,12},{8,10},{9,13},{11,15}",
        "n=8; 3: {1,3},{2,6},{4,15},{5,7},{8,12},{9,14},{10,16},{11,13}",
        "n=8; 3: {1,3},{2,6},{4,15},{5,7},{8,13},{9,11},{10,16},{12,14}",
        "n=8; 3: {1,3},{2,6},{4,15},{5,11},{7,12},{8,10},{9,13},{14,16}",
        "n=8; 3: {1,3},{2,6},{4,15},{5,11},{7,9},{8,13},{10,12},{14,16}",
        "n=8; 3: {1,3},{2,7},{4,6},{5,9},{8,14},{10,12},{11,16},{13,15}",
        "n=8; 3: {1,3},{2,7},{4,6},{5,9},{8,12},{10,14},{11,16},{13,15}",
        "n=8; 3: {1,3},{2,7},{4,6},{5,12},{8,14},{9,11},{10,16},{13,15}",
        "n=8; 3: {1,3},{2,7},{4,6},{5,11},{8,16},{9,14},{10,12},{13,15}",
        "n=8; 3: {1,3},{2,7},{4,6},{5,13},{8,16},{9,14},{10,12},{11,15}",
        "n=8; 3: {1,3},{2,7},{4,6},{5,11},{8,13},{9,15},{10,12},{14,16}",
        "n=8; 3: {1,3},{2,8},{4,6},{5,12},{7,9},{10,14},{11,16},{13,15}",
        "n=8; 3: {1,3},{2,8},{4,9},{5,7},{6,12},{10,14},{11,16},{13,15}",
        "n=8; 3: {1,3},{2,8},{4,10},{5,12},{6,14},{7,16},{9,11},{13,15}",
        "n=8; 3: {1,3},{2,8},{4,11},{5,7},{6,16},{9,14},{10,12},{13,15}",
        "n=8; 3: {1,3},{2,8},{4,15},{5,10},{6,12},{7,9},{11,13},{14,16}",
        "n=8; 3: {1,3},{2,8},{4,15},{5,13},{6,10},{7,12},{9,11},{14,16}",
        "n=8; 3: {1,3},{2,10},{4,15},{5,7},{6,16},{8,12},{9,14},{11,13}",
        "n=8; 3: {1,3},{2,12},{4,8},{5,16},{6,11},{7,9},{10,14},{13,15}",
    };
    return lines;
}

std::string catalog_text() {
    std::ostringstream os;
    for (const std::string& line : catalog_lines()) os << line << "\n";
    return os.str();
}

std::string catalog_computed_sha256() { return sha256_hex(catalog_text()); }

bool catalog_intact() { return catalog_computed_sha256() == kCatalogSha256; }

std::vector<ColoredGraph> catalog_graphs() {
    if (!catalog_intact()) {
        throw ValidationError("bundled catalog failed its integrity digest: got " +
                              catalog_computed_sha256());
    }
    std::vector<ColoredGraph> out;
    out.reserve(catalog_lines().size());
    for (const std::string& line : catalog_lines()) {
        out.push_back(parse_graph(line, GraphConvention::compact));
    }
    return out;
}

}  // namespace wickgraph
