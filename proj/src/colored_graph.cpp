#include "wickgraph/colored_graph.hpp"

#include <algorithm>
#include <sstream>

namespace wickgraph {

namespace {

std::vector<int> partners_from_edge_list(int n, int color, const EdgeList& edges) {
    if ((int)edges.size() != n) {
        std::ostringstream os;
        os << "color " << color << ": expected " << n << " edges, got " << edges.size();
        throw ValidationError(os.str());
    }
    std::vector<int> partner(2 * n, -1);
    for (const auto& [a, b] : edges) {
        for (int v : {a, b}) {
            if (v < 0 || v >= 2 * n) {
                std::ostringstream os;
                os << "color " << color << ": vertex " << v << " out of range [0, "
                   << 2 * n - 1 << "]";
                throw ValidationError(os.str());
            }
        }
        if (a == b) {
            std::ostringstream os;
            os << "color " << color << ": vertex " << a << " paired with itself";
            throw ValidationError(os.str());
        }
        for (int v : {a, b}) {
            if (partner[v] != -1) {
                std::ostringstream os;
                os << "color " << color << ": vertex " << v << " matched twice";
                throw ValidationError(os.str());
            }
        }
        partner[a] = b;
        partner[b] = a;
    }
    return partner;
}

void validate_involution(int color, const std::vector<int>& partner) {
    const int sz = (int)partner.size();
    if (sz == 0 || sz % 2 != 0) {
        std::ostringstream os;
        os << "color " << color << ": partner array must have positive even size, got " << sz;
        throw ValidationError(os.str());
    }
    for (int v = 0; v < sz; ++v) {
        const int u = partner[v];
        if (u < 0 || u >= sz) {
            std::ostringstream os;
            os << "color " << color << ": vertex " << v << " has partner " << u
               << " out of range [0, " << sz - 1 << "]";
            throw ValidationError(os.str());
        }
        if (u == v) {
            std::ostringstream os;
            os << "color " << color << ": vertex " << v << " paired with itself";
            throw ValidationError(os.str());
        }
        if (partner[u] != v) {
            std::ostringstream os;
            os << "color " << color << ": partner map is not an involution at vertex " << v;
            throw ValidationError(os.str());
        }
    }
}

}  // namespace

ColoredGraph ColoredGraph::from_edges(int n, const EdgeList& e1, const EdgeList& e2,
                                      const EdgeList& e3) {
    if (n < 1) throw ValidationError("n must be at least 1");
    std::array<std::vector<int>, 3> partner = {
        partners_from_edge_list(n, 1, e1),
        partners_from_edge_list(n, 2, e2),
        partners_from_edge_list(n, 3, e3),
    };
    return ColoredGraph(n, std::move(partner));
}

ColoredGraph ColoredGraph::from_partners(std::array<std::vector<int>, 3> partner) {
    for (int c = 0; c < 3; ++c) validate_involution(c + 1, partner[c]);
    if (partner[1].size() != partner[0].size() || partner[2].size() != partner[0].size()) {
        throw ValidationError("partner arrays must all have the same size");
    }
    const int n = (int)partner[0].size() / 2;
    return ColoredGraph(n, std::move(partner));
}

EdgeList ColoredGraph::edges(int color) const {
    EdgeList out;
    out.reserve(n_);
    const auto& p = partner_[color - 1];
    for (int v = 0; v < 2 * n_; ++v) {
        if (v < p[v]) out.emplace_back(v, p[v]);
    }
    return out;
}

int count_faces(const ColoredGraph& g, int color_i, int color_j) {
    const int sz = g.vertex_count();
    std::vector<char> seen(sz, 0);
    int faces = 0;
    for (int s = 0; s < sz; ++s) {
        if (seen[s]) continue;
        ++faces;
        // Alternate i,j starting with i; the walk returns to s after an
        // even number of steps because both colors are involutions.
        int v = s;
        while (true) {
            seen[v] = 1;
            int w = g.partner(color_i, v);
            seen[w] = 1;
            v = g.partner(color_j, w);
            if (v == s) break;
        }
    }
    return faces;
}

std::vector<std::vector<int>> face_cycles(const ColoredGraph& g, int color_i, int color_j) {
    const int sz = g.vertex_count();
    std::vector<char> seen(sz, 0);
    std::vector<std::vector<int>> cycles;
    for (int s = 0; s < sz; ++s) {
        if (seen[s]) continue;
        std::vector<int> cyc;
        int v = s;
        while (true) {
            cyc.push_back(v);
            seen[v] = 1;
            int w = g.partner(color_i, v);
            cyc.push_back(w);
            seen[w] = 1;
            v = g.partner(color_j, w);
            if (v == s) break;
        }
        cycles.push_back(std::move(cyc));
    }
    return cycles;
}

FaceProfile face_profile(const ColoredGraph& g) {
    FaceProfile fp;
    fp.f12 = count_faces(g, 1, 2);
    fp.f13 = count_faces(g, 1, 3);
    fp.f23 = count_faces(g, 2, 3);
    fp.connected = is_connected(g);
    fp.bipartite = is_bipartite(g);
    return fp;
}

bool is_connected(const ColoredGraph& g) {
    const int sz = g.vertex_count();
    std::vector<char> seen(sz, 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    int visited = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int c = 1; c <= 3; ++c) {
            int u = g.partner(c, v);
            if (!seen[u]) {
                seen[u] = 1;
                ++visited;
                stack.push_back(u);
            }
        }
    }
    return visited == sz;
}

bool is_bipartite(const ColoredGraph& g) {
    const int sz = g.vertex_count();
    std::vector<int> side(sz, -1);
    for (int s = 0; s < sz; ++s) {
        if (side[s] != -1) continue;
        side[s] = 0;
        std::vector<int> stack = {s};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int c = 1; c <= 3; ++c) {
                int u = g.partner(c, v);
                if (side[u] == -1) {
                    side[u] = side[v] ^ 1;
                    stack.push_back(u);
                } else if (side[u] == side[v]) {
                    return false;
                }
            }
        }
    }
    return true;
}

bool is_mst(const ColoredGraph& g) {
    return count_faces(g, 1, 2) == 1 && count_faces(g, 1, 3) == 1 &&
           count_faces(g, 2, 3) == 1;
}

ColoredGraph disjoint_union(const ColoredGraph& g, const ColoredGraph& h) {
    const int off = g.vertex_count();
    std::array<std::vector<int>, 3> partner;
    for (int c = 0; c < 3; ++c) {
        partner[c] = g.partners(c + 1);
        partner[c].reserve(off + h.vertex_count());
        for (int v = 0; v < h.vertex_count(); ++v) {
            partner[c].push_back(h.partner(c + 1, v) + off);
        }
    }
    return ColoredGraph::from_partners(std::move(partner));
}

ColoredGraph relabel(const ColoredGraph& g, const std::vector<int>& perm) {
    const int sz = g.vertex_count();
    if ((int)perm.size() != sz) throw ValidationError("relabel: permutation size mismatch");
    std::vector<char> hit(sz, 0);
    for (int v : perm) {
        if (v < 0 || v >= sz || hit[v]) throw ValidationError("relabel: not a permutation");
        hit[v] = 1;
    }
    std::array<std::vector<int>, 3> partner;
    for (int c = 0; c < 3; ++c) {
        partner[c].assign(sz, -1);
        for (int v = 0; v < sz; ++v) partner[c][perm[v]] = perm[g.partner(c + 1, v)];
    }
    return ColoredGraph::from_partners(std::move(partner));
}

}  // namespace wickgraph
