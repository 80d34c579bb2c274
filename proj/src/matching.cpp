#include "wickgraph/matching.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "wickgraph/digest.hpp"

namespace wickgraph {

namespace {

// double_fact[k] = (2k-1)!!, the number of perfect matchings on 2k vertices.
constexpr std::array<std::uint64_t, kMaxEnumerationM + 1> make_double_fact() {
    std::array<std::uint64_t, kMaxEnumerationM + 1> t{};
    t[0] = 1;
    for (int k = 1; k <= kMaxEnumerationM; ++k) t[k] = t[k - 1] * std::uint64_t(2 * k - 1);
    return t;
}
constexpr auto kDoubleFact = make_double_fact();

void check_m(int m) {
    if (m < 0 || m > kMaxEnumerationM) {
        std::ostringstream os;
        os << "matching enumeration supports 0 <= m <= " << kMaxEnumerationM << ", got " << m;
        throw CapacityError(os.str());
    }
}

// Doubly linked list over 0..size-1 with sentinel `size`; gives O(1)
// lowest-free lookup and remove/restore during backtracking.
struct FreeList {
    std::vector<int> nxt, prv;
    int sentinel;

    explicit FreeList(int size) : nxt(size + 1), prv(size + 1), sentinel(size) {
        for (int i = 0; i <= size; ++i) {
            nxt[i] = (i + 1) % (size + 1);
            prv[i] = (i + size) % (size + 1);
        }
    }
    int head() const { return nxt[sentinel]; }
    void remove(int v) {
        nxt[prv[v]] = nxt[v];
        prv[nxt[v]] = prv[v];
    }
    void restore(int v) {
        nxt[prv[v]] = v;
        prv[nxt[v]] = v;
    }
};

void enumerate_rec(FreeList& fl, std::vector<int>& p, int pairs_left, std::uint64_t base,
                   std::uint64_t lo, std::uint64_t hi, const MatchingVisitor& visit) {
    if (pairs_left == 0) {
        visit(p, base);
        return;
    }
    const std::uint64_t sub = kDoubleFact[pairs_left - 1];  // leaves per branch
    const int v = fl.head();
    fl.remove(v);
    // remove/restore pairs nest in LIFO order, so after restore(u) the list
    // is exactly as before remove(u) and fl.nxt[u] is valid again.
    for (int u = fl.head(); u != fl.sentinel && base < hi; u = fl.nxt[u]) {
        if (base + sub > lo) {
            fl.remove(u);
            p[v] = u;
            p[u] = v;
            enumerate_rec(fl, p, pairs_left - 1, base, lo, hi, visit);
            p[v] = -1;
            p[u] = -1;
            fl.restore(u);
        }
        base += sub;
    }
    fl.restore(v);
}

}  // namespace

std::uint64_t matching_count(int m) {
    check_m(m);
    return kDoubleFact[m];
}

Matching Matching::from_partner(std::vector<int> partner) {
    const int sz = (int)partner.size();
    if (sz == 0 || sz % 2 != 0) {
        throw ValidationError("matching: partner array must have positive even size");
    }
    for (int v = 0; v < sz; ++v) {
        const int u = partner[v];
        if (u < 0 || u >= sz) {
            std::ostringstream os;
            os << "matching: vertex " << v << " has partner out of range";
            throw ValidationError(os.str());
        }
        if (u == v || partner[u] != v) {
            std::ostringstream os;
            os << "matching: partner map is not a fixed-point-free involution at vertex " << v;
            throw ValidationError(os.str());
        }
    }
    Matching m;
    m.partner = std::move(partner);
    return m;
}

Matching Matching::from_edges(int m, const EdgeList& edges) {
    if ((int)edges.size() != m) {
        std::ostringstream os;
        os << "matching: expected " << m << " edges, got " << edges.size();
        throw ValidationError(os.str());
    }
    std::vector<int> partner(2 * m, -1);
    for (const auto& [a, b] : edges) {
        for (int v : {a, b}) {
            if (v < 0 || v >= 2 * m) {
                std::ostringstream os;
                os << "matching: vertex " << v << " out of range [0, " << 2 * m - 1 << "]";
                throw ValidationError(os.str());
            }
        }
        if (a == b) {
            std::ostringstream os;
            os << "matching: vertex " << a << " paired with itself";
            throw ValidationError(os.str());
        }
        for (int v : {a, b}) {
            if (partner[v] != -1) {
                std::ostringstream os;
                os << "matching: vertex " << v << " matched twice";
                throw ValidationError(os.str());
            }
        }
        partner[a] = b;
        partner[b] = a;
    }
    Matching out;
    out.partner = std::move(partner);
    return out;
}

EdgeList Matching::edges() const {
    EdgeList out;
    out.reserve(m());
    for (int v = 0; v < (int)partner.size(); ++v) {
        if (v < partner[v]) out.emplace_back(v, partner[v]);
    }
    return out;
}

void for_each_matching(int m, const MatchingVisitor& visit) {
    for_each_matching_range(m, 0, matching_count(m), visit);
}

void for_each_matching_range(int m, std::uint64_t lo, std::uint64_t hi,
                             const MatchingVisitor& visit) {
    check_m(m);
    hi = std::min(hi, kDoubleFact[m]);
    if (lo >= hi) return;
    FreeList fl(2 * m);
    std::vector<int> p(2 * m, -1);
    enumerate_rec(fl, p, m, 0, lo, hi, visit);
}

std::vector<Matching> all_matchings(int m) {
    std::vector<Matching> out;
    out.reserve(matching_count(m));
    for_each_matching(m, [&](const std::vector<int>& p, std::uint64_t) {
        Matching mm;
        mm.partner = p;
        out.push_back(std::move(mm));
    });
    return out;
}

std::uint64_t matching_rank(const Matching& matching) {
    const int m = matching.m();
    check_m(m);
    std::vector<int> avail(2 * m);
    for (int i = 0; i < 2 * m; ++i) avail[i] = i;
    std::uint64_t rank = 0;
    for (int k = m; k > 0; --k) {
        const int v = avail[0];
        const int u = matching.partner[v];
        // Index of u among the available vertices greater than v.
        auto it = std::find(avail.begin() + 1, avail.end(), u);
        if (it == avail.end()) throw ValidationError("matching_rank: inconsistent matching");
        const std::uint64_t choice = std::uint64_t(it - avail.begin()) - 1;
        rank += choice * kDoubleFact[k - 1];
        avail.erase(it);
        avail.erase(avail.begin());
    }
    return rank;
}

Matching matching_at(int m, std::uint64_t rank) {
    check_m(m);
    if (rank >= kDoubleFact[m]) {
        std::ostringstream os;
        os << "matching_at: rank " << rank << " out of range for m=" << m;
        throw ValidationError(os.str());
    }
    std::vector<int> avail(2 * m);
    for (int i = 0; i < 2 * m; ++i) avail[i] = i;
    std::vector<int> partner(2 * m, -1);
    for (int k = m; k > 0; --k) {
        const std::uint64_t sub = kDoubleFact[k - 1];
        const std::uint64_t choice = rank / sub;
        rank %= sub;
        const int v = avail[0];
        const int u = avail[choice + 1];
        partner[v] = u;
        partner[u] = v;
        avail.erase(avail.begin() + (choice + 1));
        avail.erase(avail.begin());
    }
    Matching out;
    out.partner = std::move(partner);
    return out;
}

Matching ring_even_matching(int m) {
    std::vector<int> p(2 * m);
    for (int i = 0; i < m; ++i) {
        p[2 * i] = 2 * i + 1;
        p[2 * i + 1] = 2 * i;
    }
    Matching out;
    out.partner = std::move(p);
    return out;
}

Matching ring_odd_matching(int m) {
    std::vector<int> p(2 * m);
    for (int i = 0; i < m; ++i) {
        p[2 * i + 1] = (2 * i + 2) % (2 * m);
        p[(2 * i + 2) % (2 * m)] = 2 * i + 1;
    }
    Matching out;
    out.partner = std::move(p);
    return out;
}

Matching parallel_matching(const ColoredGraph& g, int color) {
    Matching out;
    out.partner = g.partners(color);
    return out;
}

namespace {

// Cycle count of the union of two involutions given as raw arrays, for
// sizes up to 64 vertices (bitmask visited set).
int cycle_count_masked(const int* a, const int* b, int size) {
    std::uint64_t unseen = (size == 64) ? ~0ULL : ((1ULL << size) - 1);
    int cycles = 0;
    while (unseen) {
        const int s = std::countr_zero(unseen);
        ++cycles;
        int v = s;
        do {
            const int w = a[v];
            unseen &= ~((1ULL << v) | (1ULL << w));
            v = b[w];
        } while (v != s);
    }
    return cycles;
}

int cycle_count_general(const std::vector<int>& a, const std::vector<int>& b) {
    const int size = (int)a.size();
    std::vector<char> seen(size, 0);
    int cycles = 0;
    for (int s = 0; s < size; ++s) {
        if (seen[s]) continue;
        ++cycles;
        int v = s;
        do {
            const int w = a[v];
            seen[v] = 1;
            seen[w] = 1;
            v = b[w];
        } while (v != s);
    }
    return cycles;
}

}  // namespace

int union_cycles(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) throw ValidationError("union_cycles: size mismatch");
    if (a.size() <= 64) return cycle_count_masked(a.data(), b.data(), (int)a.size());
    return cycle_count_general(a, b);
}

int faces_with_color0(const ColoredGraph& g, const Matching& m0) {
    if ((int)m0.partner.size() != g.vertex_count()) {
        std::ostringstream os;
        os << "faces_with_color0: matching covers " << m0.partner.size()
           << " vertices but the graph has " << g.vertex_count();
        throw ValidationError(os.str());
    }
    int total = 0;
    for (int c = 1; c <= 3; ++c) total += cycle_count_general(m0.partner, g.partners(c));
    return total;
}

namespace {

// Union-find without path compression so merges can be undone in LIFO
// order; union by size keeps find() at O(log n) for these tiny instances.
struct RollbackDsu {
    std::vector<int> parent, size;
    struct Op {
        int child_root, parent_root;
    };
    std::vector<Op> ops;

    explicit RollbackDsu(int size_) : parent(size_), size(size_, 1) {
        for (int i = 0; i < size_; ++i) parent[i] = i;
    }
    int find(int x) const {
        while (parent[x] != x) x = parent[x];
        return x;
    }
    // Returns false (and records nothing) when v and u were already joined,
    // i.e. this edge closes a cycle.
    bool unite(int v, int u) {
        int rv = find(v), ru = find(u);
        if (rv == ru) return false;
        if (size[rv] < size[ru]) std::swap(rv, ru);
        parent[ru] = rv;
        size[rv] += size[ru];
        ops.push_back({ru, rv});
        return true;
    }
    std::size_t mark() const { return ops.size(); }
    void rollback(std::size_t to) {
        while (ops.size() > to) {
            const Op op = ops.back();
            ops.pop_back();
            size[op.parent_root] -= size[op.child_root];
            parent[op.child_root] = op.child_root;
        }
    }
};

struct MaxFaceSearch {
    const ColoredGraph& g;
    const MaxFaceOptions& opts;
    MaxFaceResult& res;
    std::array<RollbackDsu, 3> dsu;
    FreeList fl;
    std::vector<int> p0;
    int closed = 0;
    std::uint64_t nodes = 0;
    bool stopped = false;

    MaxFaceSearch(const ColoredGraph& g_, const MaxFaceOptions& o, MaxFaceResult& r)
        : g(g_),
          opts(o),
          res(r),
          dsu{RollbackDsu(g_.vertex_count()), RollbackDsu(g_.vertex_count()),
              RollbackDsu(g_.vertex_count())},
          fl(g_.vertex_count()),
          p0(g_.vertex_count(), -1) {
        // Seed each color's components with that color's own edges; a face
        // of M ∪ E_c closes exactly when an M edge joins two vertices
        // already connected in color c.
        for (int c = 0; c < 3; ++c) {
            for (int v = 0; v < g.vertex_count(); ++v) {
                const int u = g.partner(c + 1, v);
                if (v < u) dsu[c].unite(v, u);
            }
        }
    }

    void run(int pairs_left) {
        if (stopped) return;
        if (opts.node_budget && ++nodes > opts.node_budget) {
            stopped = true;
            res.complete = false;
            return;
        }
        if (pairs_left == 0) {
            ++res.matchings_examined;
            if (closed > res.max_f) {
                res.max_f = closed;
                res.witness.partner = p0;
                res.maximizer_count = 1;
            } else if (closed == res.max_f) {
                ++res.maximizer_count;
            }
            return;
        }
        const int v = fl.head();
        fl.remove(v);
        for (int u = fl.head(); u != fl.sentinel; u = fl.nxt[u]) {
            std::array<std::size_t, 3> marks;
            int closures = 0;
            for (int c = 0; c < 3; ++c) {
                marks[c] = dsu[c].mark();
                if (!dsu[c].unite(v, u)) ++closures;
            }
            closed += closures;
            // Every remaining M edge can close at most one face per color.
            const int upper = closed + 3 * (pairs_left - 1);
            if (!opts.prune || upper >= res.max_f) {
                fl.remove(u);
                p0[v] = u;
                p0[u] = v;
                run(pairs_left - 1);
                p0[v] = -1;
                p0[u] = -1;
                fl.restore(u);
                closed -= closures;
                for (int c = 2; c >= 0; --c) dsu[c].rollback(marks[c]);
                if (stopped) {
                    fl.restore(v);
                    return;
                }
            } else {
                ++res.nodes_pruned;
                closed -= closures;
                for (int c = 2; c >= 0; --c) dsu[c].rollback(marks[c]);
            }
        }
        fl.restore(v);
    }
};

}  // namespace

MaxFaceResult max_faces(const ColoredGraph& g, const MaxFaceOptions& opts) {
    MaxFaceResult res;
    res.max_f = -1;  // any leaf beats this, so the first leaf initializes the incumbent
    MaxFaceSearch search(g, opts, res);
    search.run(g.n());
    return res;
}

PartialFaceTable PartialFaceTable::build(int m, std::size_t memory_cap) {
    check_m(m);
    const std::uint64_t count = kDoubleFact[m];
    if (2 * count > memory_cap) {
        std::ostringstream os;
        os << "partial face table for m=" << m << " needs " << 2 * count
           << " bytes, cap is " << memory_cap;
        throw CapacityError(os.str());
    }
    PartialFaceTable t;
    t.m_ = m;
    t.f_even_.resize(count);
    t.f_odd_.resize(count);
    const Matching even = ring_even_matching(m);
    const Matching odd = ring_odd_matching(m);
    for_each_matching(m, [&](const std::vector<int>& p, std::uint64_t rank) {
        t.f_even_[rank] =
            (std::uint8_t)cycle_count_masked(p.data(), even.partner.data(), 2 * m);
        t.f_odd_[rank] =
            (std::uint8_t)cycle_count_masked(p.data(), odd.partner.data(), 2 * m);
    });
    return t;
}

namespace {

constexpr char kTableMagic[8] = {'W', 'G', 'F', 'T', 'B', 'L', '0', '1'};

template <typename T>
void write_pod(std::ofstream& out, const T& v, std::uint64_t& checksum) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
    checksum = fnv1a64(&v, sizeof(T), checksum);
}

template <typename T>
void read_pod(std::ifstream& in, T& v, std::uint64_t& checksum) {
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw CacheError("partial face table file truncated");
    checksum = fnv1a64(&v, sizeof(T), checksum);
}

}  // namespace

void PartialFaceTable::save(const std::string& path) const {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw CacheError("cannot open " + tmp + " for writing");
        std::uint64_t checksum = kFnvOffset;
        out.write(kTableMagic, sizeof(kTableMagic));
        checksum = fnv1a64(kTableMagic, sizeof(kTableMagic), checksum);
        write_pod(out, kEnumerationRuleId, checksum);
        const std::uint32_t m32 = (std::uint32_t)m_;
        write_pod(out, m32, checksum);
        const std::uint64_t count = size();
        write_pod(out, count, checksum);
        out.write(reinterpret_cast<const char*>(f_even_.data()), count);
        checksum = fnv1a64(f_even_.data(), count, checksum);
        out.write(reinterpret_cast<const char*>(f_odd_.data()), count);
        checksum = fnv1a64(f_odd_.data(), count, checksum);
        out.write(reinterpret_cast<const char*>(&checksum), sizeof(checksum));
        if (!out) throw CacheError("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        throw CacheError("cannot move " + tmp + " into place");
    }
}

PartialFaceTable PartialFaceTable::load(const std::string& path, std::size_t memory_cap) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CacheError("cannot open " + path);
    std::uint64_t checksum = kFnvOffset;
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kTableMagic, sizeof(magic)) != 0) {
        throw CacheError(path + ": not a partial face table file");
    }
    checksum = fnv1a64(magic, sizeof(magic), checksum);
    std::uint32_t rule = 0, m32 = 0;
    std::uint64_t count = 0;
    read_pod(in, rule, checksum);
    read_pod(in, m32, checksum);
    read_pod(in, count, checksum);
    if (rule != kEnumerationRuleId) {
        throw CacheError(path + ": enumeration rule mismatch");
    }
    if (m32 > (std::uint32_t)kMaxEnumerationM || count != kDoubleFact[m32]) {
        throw CacheError(path + ": inconsistent header");
    }
    if (2 * count > memory_cap) {
        throw CacheError(path + ": table exceeds memory cap");
    }
    PartialFaceTable t;
    t.m_ = (int)m32;
    t.f_even_.resize(count);
    t.f_odd_.resize(count);
    in.read(reinterpret_cast<char*>(t.f_even_.data()), count);
    if (!in) throw CacheError(path + ": truncated");
    checksum = fnv1a64(t.f_even_.data(), count, checksum);
    in.read(reinterpret_cast<char*>(t.f_odd_.data()), count);
    if (!in) throw CacheError(path + ": truncated");
    checksum = fnv1a64(t.f_odd_.data(), count, checksum);
    std::uint64_t stored = 0;
    in.read(reinterpret_cast<char*>(&stored), sizeof(stored));
    if (!in || stored != checksum) throw CacheError(path + ": checksum mismatch");
    return t;
}

namespace {

// Unranks into caller-provided scratch to keep the survey scan allocation
// free. Mirrors matching_at.
void matching_into(int m, std::uint64_t rank, std::vector<int>& partner,
                   std::vector<int>& avail) {
    avail.resize(2 * m);
    for (int i = 0; i < 2 * m; ++i) avail[i] = i;
    partner.assign(2 * m, -1);
    int live = 2 * m;
    for (int k = m; k > 0; --k) {
        const std::uint64_t sub = kDoubleFact[k - 1];
        const int choice = (int)(rank / sub);
        rank %= sub;
        const int v = avail[0];
        const int u = avail[choice + 1];
        partner[v] = u;
        partner[u] = v;
        for (int i = choice + 1; i + 1 < live; ++i) avail[i] = avail[i + 1];
        --live;
        for (int i = 0; i + 1 < live; ++i) avail[i] = avail[i + 1];
        --live;
    }
}

}  // namespace

MaxFaceResult max_faces_with_table(const ColoredGraph& g, const PartialFaceTable& table) {
    const int n = g.n();
    if (n != table.m()) {
        throw ValidationError("max_faces_with_table: table size does not match graph");
    }
    if (g.partners(1) != ring_even_matching(n).partner ||
        g.partners(2) != ring_odd_matching(n).partner) {
        throw ValidationError(
            "max_faces_with_table: graph colors 1 and 2 must be the fixed ring matchings");
    }
    const std::vector<int>& e3 = g.partners(3);
    MaxFaceResult res;
    res.max_f = -1;
    std::vector<int> partner, avail;
    const std::uint64_t count = table.size();
    for (std::uint64_t rank = 0; rank < count; ++rank) {
        const int partial = table.faces_even(rank) + table.faces_odd(rank);
        // A matching has at most n faces against color 3, so it cannot
        // reach the incumbent unless partial + n does. Ties survive.
        if (partial + n < res.max_f) {
            ++res.nodes_pruned;
            continue;
        }
        matching_into(n, rank, partner, avail);
        const int f = partial + cycle_count_masked(partner.data(), e3.data(), 2 * n);
        ++res.matchings_examined;
        if (f > res.max_f) {
            res.max_f = f;
            res.witness.partner = partner;
            res.maximizer_count = 1;
        } else if (f == res.max_f) {
            ++res.maximizer_count;
        }
    }
    return res;
}

}  // namespace wickgraph
