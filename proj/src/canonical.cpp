#include "wickgraph/canonical.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace wickgraph {

namespace {

// Breadth-first labeling of a connected graph from a fixed root: the root
// gets label 0, then each vertex in label order hands out the next labels
// to its color-1, color-2, color-3 partners. The whole labeling — and so
// the serialized partner table — is determined by the choice of root.
void bfs_code_from_root(int n, const int* const p[3], int root, std::vector<int>& label,
                        std::vector<int>& order, std::string& out) {
    const int size = 2 * n;
    label.assign(size, -1);
    order.resize(size);
    label[root] = 0;
    order[0] = root;
    int next = 1;
    for (int pos = 0; pos < size; ++pos) {
        const int v = order[pos];
        for (int c = 0; c < 3; ++c) {
            const int u = p[c][v];
            if (label[u] < 0) {
                label[u] = next;
                order[next] = u;
                ++next;
            }
        }
    }
    out.resize(1 + 3 * size);
    out[0] = (char)n;
    char* w = out.data() + 1;
    for (int pos = 0; pos < size; ++pos) {
        const int v = order[pos];
        for (int c = 0; c < 3; ++c) *w++ = (char)label[p[c][v]];
    }
}

// Minimal code over all roots; label/order are scratch. Returns through
// `best`, and if best_labeling is non-null, stores the winning labeling.
void connected_code(int n, const int* const p[3], std::string& best, std::string& cur,
                    std::vector<int>& label, std::vector<int>& order,
                    std::vector<int>* best_labeling) {
    const int size = 2 * n;
    best.clear();
    for (int root = 0; root < size; ++root) {
        bfs_code_from_root(n, p, root, label, order, cur);
        if (best.empty() || cur < best) {
            best = cur;
            if (best_labeling) *best_labeling = label;
        }
    }
}

struct Component {
    std::vector<int> vertices;  // sorted original labels
    std::string code;
    std::vector<int> labeling;  // canonical label within the component
};

std::vector<Component> component_codes(const ColoredGraph& g) {
    const int size = g.vertex_count();
    std::vector<char> seen(size, 0);
    std::vector<Component> comps;
    for (int s = 0; s < size; ++s) {
        if (seen[s]) continue;
        Component comp;
        std::vector<int> stack = {s};
        seen[s] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.vertices.push_back(v);
            for (int c = 1; c <= 3; ++c) {
                int u = g.partner(c, v);
                if (!seen[u]) {
                    seen[u] = 1;
                    stack.push_back(u);
                }
            }
        }
        std::sort(comp.vertices.begin(), comp.vertices.end());
        const int k = (int)comp.vertices.size() / 2;
        std::vector<int> local(size, -1);
        for (int i = 0; i < 2 * k; ++i) local[comp.vertices[i]] = i;
        std::array<std::vector<int>, 3> sub;
        for (int c = 0; c < 3; ++c) {
            sub[c].resize(2 * k);
            for (int i = 0; i < 2 * k; ++i) {
                sub[c][i] = local[g.partner(c + 1, comp.vertices[i])];
            }
        }
        const int* p[3] = {sub[0].data(), sub[1].data(), sub[2].data()};
        std::string cur;
        std::vector<int> label, order;
        connected_code(k, p, comp.code, cur, label, order, &comp.labeling);
        comps.push_back(std::move(comp));
    }
    std::stable_sort(comps.begin(), comps.end(),
                     [](const Component& a, const Component& b) { return a.code < b.code; });
    return comps;
}

}  // namespace

std::string CanonicalForm::hex() const {
    static const char* hexdig = "0123456789abcdef";
    std::string out;
    out.reserve(2 * code.size());
    for (unsigned char b : code) {
        out.push_back(hexdig[b >> 4]);
        out.push_back(hexdig[b & 15]);
    }
    return out;
}

CanonicalForm canonical_form(const ColoredGraph& g) {
    if (g.vertex_count() >= 256) {
        throw CapacityError("canonical_form supports at most 255 vertices");
    }
    CanonicalForm out;
    out.n = g.n();
    for (const Component& comp : component_codes(g)) out.code += comp.code;
    return out;
}

std::vector<int> canonical_labeling(const ColoredGraph& g) {
    if (g.vertex_count() >= 256) {
        throw CapacityError("canonical_labeling supports at most 255 vertices");
    }
    const auto comps = component_codes(g);
    std::vector<int> perm(g.vertex_count());
    int offset = 0;
    for (const Component& comp : comps) {
        for (int i = 0; i < (int)comp.vertices.size(); ++i) {
            perm[comp.vertices[i]] = offset + comp.labeling[i];
        }
        offset += (int)comp.vertices.size();
    }
    return perm;
}

bool is_isomorphic(const ColoredGraph& g, const ColoredGraph& h) {
    if (g.n() != h.n()) return false;
    return canonical_form(g).code == canonical_form(h).code;
}

CanonicalForm color_orbit_form(const ColoredGraph& g) {
    static constexpr int kPerms[6][3] = {{1, 2, 3}, {1, 3, 2}, {2, 1, 3},
                                         {2, 3, 1}, {3, 1, 2}, {3, 2, 1}};
    CanonicalForm best;
    for (const auto& perm : kPerms) {
        ColoredGraph recolored = ColoredGraph::from_partners(
            {g.partners(perm[0]), g.partners(perm[1]), g.partners(perm[2])});
        CanonicalForm cf = canonical_form(recolored);
        if (best.code.empty() || cf.code < best.code) best = cf;
    }
    return best;
}

const std::string& Canonicalizer::code_of_partners(int n, const int* p1, const int* p2,
                                                   const int* p3) {
    const int* p[3] = {p1, p2, p3};
    connected_code(n, p, best_, cur_, label_, order_, nullptr);
    return best_;
}

}  // namespace wickgraph
