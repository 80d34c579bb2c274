#include "wickgraph/survey.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstring>
#include <filesystem>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>
#include <utility>

#include "binary_io.hpp"
#include "wickgraph/parallel.hpp"
#include "wickgraph/version.hpp"

namespace wickgraph {

std::string to_string(SurveyMode mode) {
    switch (mode) {
        case SurveyMode::single_face_pair: return "single_face_pair";
        case SurveyMode::mst_only: return "mst_only";
        case SurveyMode::all_colored: return "all_colored";
    }
    throw ValidationError("unknown survey mode value");
}

SurveyMode survey_mode_from_string(const std::string& name) {
    if (name == "single_face_pair") return SurveyMode::single_face_pair;
    if (name == "mst_only") return SurveyMode::mst_only;
    if (name == "all_colored") return SurveyMode::all_colored;
    throw ValidationError("unknown survey mode: " + name);
}

namespace {

constexpr char kCheckpointMagic[8] = {'W', 'G', 'S', 'U', 'R', 'V', '0', '1'};
constexpr std::uint64_t kSweepBlockRanks = 1024;

std::vector<std::uint8_t> pack(const std::vector<int>& p) {
    std::vector<std::uint8_t> out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = (std::uint8_t)p[i];
    return out;
}

std::vector<int> unpack(const std::vector<std::uint8_t>& b) {
    std::vector<int> out(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = b[i];
    return out;
}

// Swept partner arrays of one candidate, packed to a byte per vertex. The
// class representative is the least of these under lexicographic order,
// which is also the first candidate in enumeration order.
struct Rep {
    std::vector<std::uint8_t> e2;  // empty unless the mode sweeps color 2
    std::vector<std::uint8_t> e3;
};

bool rep_less(const Rep& a, const Rep& b) {
    return std::tie(a.e2, a.e3) < std::tie(b.e2, b.e3);
}

using ClassMap = std::map<std::string, Rep>;  // canonical code -> least rep

struct ClassResult {
    bool done = false;
    FaceProfile profile;
    int max_f = 0;
    bool violates = false;
    std::vector<std::uint8_t> witness;  // empty unless violates
    std::uint64_t leaves = 0;
};

// Everything a checkpoint persists. Phase 0 sweeps candidates into
// class_map; phase 1 walks the frozen, code-sorted class list.
struct State {
    int n = 0;
    SurveyMode mode = SurveyMode::mst_only;
    int phase = 0;
    std::uint64_t block_size = kSweepBlockRanks;
    std::uint64_t candidates = 0;
    std::vector<std::uint8_t> block_done;
    ClassMap class_map;
    std::vector<std::pair<std::string, Rep>> classes;
    std::vector<ClassResult> results;
};

std::uint64_t sweep_unit_count(int n, SurveyMode mode, std::uint64_t block_size) {
    const std::uint64_t count = matching_count(n);
    if (mode == SurveyMode::all_colored) return count;  // one unit per color-2 rank
    return (count + block_size - 1) / block_size;
}

void save_state(const State& s, const std::string& path) {
    detail::ByteWriter w;
    w.bytes(kCheckpointMagic, sizeof(kCheckpointMagic));
    w.pod(kEnumerationRuleId);
    w.pod((std::uint16_t)s.n);
    w.pod((std::uint8_t)s.mode);
    w.pod((std::uint8_t)s.phase);
    w.pod(s.block_size);
    w.pod(s.candidates);
    const auto put_rep = [&](const Rep& r) {
        w.pod((std::uint8_t)(r.e2.empty() ? 0 : 1));
        w.bytes(r.e2.data(), r.e2.size());
        w.bytes(r.e3.data(), r.e3.size());
    };
    if (s.phase == 0) {
        w.pod((std::uint64_t)s.block_done.size());
        w.bytes(s.block_done.data(), s.block_done.size());
        w.pod((std::uint64_t)s.class_map.size());
        for (const auto& [code, rep] : s.class_map) {
            w.str(code);
            put_rep(rep);
        }
    } else {
        w.pod((std::uint64_t)s.classes.size());
        for (const auto& [code, rep] : s.classes) {
            w.str(code);
            put_rep(rep);
        }
        for (const ClassResult& r : s.results) {
            w.pod((std::uint8_t)(r.done ? 1 : 0));
            if (!r.done) continue;
            w.pod((std::int32_t)r.profile.f12);
            w.pod((std::int32_t)r.profile.f13);
            w.pod((std::int32_t)r.profile.f23);
            w.pod((std::uint8_t)r.profile.connected);
            w.pod((std::uint8_t)r.profile.bipartite);
            w.pod((std::int32_t)r.max_f);
            w.pod((std::uint8_t)r.violates);
            w.pod((std::uint8_t)(r.witness.empty() ? 0 : 1));
            w.bytes(r.witness.data(), r.witness.size());
            w.pod(r.leaves);
        }
    }
    w.save(path);
}

State load_state(const std::string& path, const SurveyConfig& cfg) {
    detail::ByteReader r = detail::ByteReader::open(path);
    char magic[8];
    r.bytes(magic, sizeof(magic));
    if (std::memcmp(magic, kCheckpointMagic, sizeof(magic)) != 0)
        throw CacheError(path + ": not a survey checkpoint");
    if (r.pod<std::uint32_t>() != kEnumerationRuleId)
        throw CacheError(path + ": enumeration rule mismatch");
    State s;
    s.n = r.pod<std::uint16_t>();
    const auto mode_byte = r.pod<std::uint8_t>();
    if (mode_byte > (std::uint8_t)SurveyMode::all_colored)
        throw CacheError(path + ": inconsistent header");
    s.mode = (SurveyMode)mode_byte;
    if (s.n != cfg.n || s.mode != cfg.mode) {
        std::ostringstream os;
        os << path << ": checkpoint is for n=" << s.n << " mode=" << to_string(s.mode)
           << ", requested n=" << cfg.n << " mode=" << to_string(cfg.mode);
        throw CacheError(os.str());
    }
    s.phase = r.pod<std::uint8_t>();
    s.block_size = r.pod<std::uint64_t>();
    s.candidates = r.pod<std::uint64_t>();
    if (s.phase > 1 || s.block_size == 0) throw CacheError(path + ": inconsistent header");
    const std::size_t nv = 2 * (std::size_t)s.n;
    const bool wants_e2 = s.mode == SurveyMode::all_colored;
    const auto get_rep = [&] {
        Rep rep;
        const bool has_e2 = r.pod<std::uint8_t>() != 0;
        if (has_e2 != wants_e2) throw CacheError(path + ": representative shape mismatch");
        if (has_e2) {
            rep.e2.resize(nv);
            r.bytes(rep.e2.data(), nv);
        }
        rep.e3.resize(nv);
        r.bytes(rep.e3.data(), nv);
        return rep;
    };
    if (s.phase == 0) {
        const auto blocks = r.pod<std::uint64_t>();
        if (blocks != sweep_unit_count(s.n, s.mode, s.block_size))
            throw CacheError(path + ": block table size mismatch");
        s.block_done.resize(blocks);
        r.bytes(s.block_done.data(), blocks);
        const auto count = r.pod<std::uint64_t>();
        for (std::uint64_t i = 0; i < count; ++i) {
            std::string code = r.str();
            s.class_map.emplace(std::move(code), get_rep());
        }
    } else {
        const auto count = r.pod<std::uint64_t>();
        s.classes.reserve(count);
        for (std::uint64_t i = 0; i < count; ++i) {
            std::string code = r.str();
            s.classes.emplace_back(std::move(code), get_rep());
        }
        s.results.resize(count);
        for (std::uint64_t i = 0; i < count; ++i) {
            ClassResult& res = s.results[i];
            res.done = r.pod<std::uint8_t>() != 0;
            if (!res.done) continue;
            res.profile.f12 = r.pod<std::int32_t>();
            res.profile.f13 = r.pod<std::int32_t>();
            res.profile.f23 = r.pod<std::int32_t>();
            res.profile.connected = r.pod<std::uint8_t>() != 0;
            res.profile.bipartite = r.pod<std::uint8_t>() != 0;
            res.max_f = r.pod<std::int32_t>();
            res.violates = r.pod<std::uint8_t>() != 0;
            if (r.pod<std::uint8_t>() != 0) {
                res.witness.resize(nv);
                r.bytes(res.witness.data(), nv);
            }
            res.leaves = r.pod<std::uint64_t>();
        }
    }
    if (!r.done()) throw CacheError(path + ": trailing bytes");
    return s;
}

// BFS over three partner arrays; true when everything is reachable from 0.
bool connected_partners(int n, const int* p1, const int* p2, const int* p3,
                        std::vector<char>& seen, std::vector<int>& stack) {
    const int nv = 2 * n;
    seen.assign(nv, 0);
    stack.assign(1, 0);
    seen[0] = 1;
    int visited = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (const int u : {p1[v], p2[v], p3[v]}) {
            if (!seen[u]) {
                seen[u] = 1;
                ++visited;
                stack.push_back(u);
            }
        }
    }
    return visited == nv;
}

// Claims units off a shared counter, merges them under one mutex, and
// handles the stop / checkpoint bookkeeping. A completed report depends
// only on which units exist, never on who ran them.
struct Runner {
    Runner(const SurveyConfig& cfg_, State& s_) : cfg(cfg_), s(s_) {}

    const SurveyConfig& cfg;
    State& s;
    std::mutex mu;
    std::atomic<std::uint64_t> next{0};
    std::atomic<bool> stop{false};
    std::uint64_t units_this_run = 0;
    std::uint64_t since_checkpoint = 0;

    // Call under mu after merging one unit.
    void unit_done() {
        ++units_this_run;
        ++since_checkpoint;
        if (cfg.stop_after_units && units_this_run >= cfg.stop_after_units) stop = true;
        if (!cfg.checkpoint_path.empty() && since_checkpoint >= cfg.checkpoint_interval) {
            save_state(s, cfg.checkpoint_path);
            since_checkpoint = 0;
        }
    }

    // make_worker() builds one per-thread unit handler (scratch lives there).
    template <typename MakeWorker>
    void run_units(std::uint64_t total, int workers, MakeWorker make_worker) {
        next = 0;
        auto body = [&, total] {
            auto handle = make_worker();
            for (;;) {
                if (stop.load(std::memory_order_relaxed)) return;
                const std::uint64_t u = next.fetch_add(1);
                if (u >= total) return;
                handle(u);
            }
        };
        if (workers <= 1) {
            body();
            return;
        }
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(body);
        for (auto& t : pool) t.join();
    }
};

void merge_batch(State& s, ClassMap& batch) {
    for (auto& [code, rep] : batch) {
        auto [it, inserted] = s.class_map.try_emplace(code, std::move(rep));
        if (!inserted && rep_less(rep, it->second)) it->second = std::move(rep);
    }
}

void sweep_rings(Runner& r, int workers) {
    State& s = r.s;
    const int n = s.n;
    const std::uint64_t count = matching_count(n);
    const std::uint64_t blocks = s.block_done.size();
    const bool mst_only = s.mode == SurveyMode::mst_only;
    const std::vector<int> e1 = ring_even_matching(n).partner;
    const std::vector<int> e2 = ring_odd_matching(n).partner;
    r.run_units(blocks, workers, [&] {
        return [&, canon = Canonicalizer()](std::uint64_t b) mutable {
            if (s.block_done[b]) return;  // finished by an earlier run
            const std::uint64_t lo = b * s.block_size;
            const std::uint64_t hi = std::min(count, lo + s.block_size);
            ClassMap batch;
            for_each_matching_range(n, lo, hi, [&](const std::vector<int>& p, std::uint64_t) {
                if (mst_only && (union_cycles(e1, p) != 1 || union_cycles(e2, p) != 1)) return;
                const std::string& code = canon.code_of_partners(n, e1.data(), e2.data(), p.data());
                // Ranks ascend inside a block, so the first insert is least.
                const auto it = batch.lower_bound(code);
                if (it == batch.end() || it->first != code)
                    batch.emplace_hint(it, code, Rep{{}, pack(p)});
            });
            const std::lock_guard<std::mutex> lock(r.mu);
            merge_batch(s, batch);
            s.block_done[b] = 1;
            s.candidates += hi - lo;
            r.unit_done();
        };
    });
}

void sweep_all_colored(Runner& r, int workers) {
    State& s = r.s;
    const int n = s.n;
    const std::vector<int> e1 = ring_even_matching(n).partner;
    r.run_units(s.block_done.size(), workers, [&] {
        struct Scratch {
            Canonicalizer canon;
            std::vector<char> seen;
            std::vector<int> stack;
        };
        return [&, sc = Scratch()](std::uint64_t u) mutable {
            if (s.block_done[u]) return;
            const std::vector<int> e2 = matching_at(n, u).partner;
            const std::vector<std::uint8_t> e2_packed = pack(e2);
            ClassMap batch;
            for_each_matching(n, [&](const std::vector<int>& e3, std::uint64_t) {
                if (!connected_partners(n, e1.data(), e2.data(), e3.data(), sc.seen, sc.stack))
                    return;
                const std::string& code =
                    sc.canon.code_of_partners(n, e1.data(), e2.data(), e3.data());
                const auto it = batch.lower_bound(code);
                if (it == batch.end() || it->first != code)
                    batch.emplace_hint(it, code, Rep{e2_packed, pack(e3)});
            });
            const std::lock_guard<std::mutex> lock(r.mu);
            merge_batch(s, batch);
            s.block_done[u] = 1;
            s.candidates += matching_count(n);
            r.unit_done();
        };
    });
}

ColoredGraph graph_of(const State& s, const Rep& rep) {
    std::vector<int> e2 = rep.e2.empty() ? ring_odd_matching(s.n).partner : unpack(rep.e2);
    return ColoredGraph::from_partners(
        {ring_even_matching(s.n).partner, std::move(e2), unpack(rep.e3)});
}

void maximize_classes(Runner& r, int workers, const PartialFaceTable* table) {
    State& s = r.s;
    const int n = s.n;
    r.run_units(s.classes.size(), workers, [&] {
        return [&](std::uint64_t idx) {
            if (s.results[idx].done) return;
            const ColoredGraph g = graph_of(s, s.classes[idx].second);
            ClassResult res;
            res.done = true;
            res.profile = face_profile(g);
            const MaxFaceResult mr = table ? max_faces_with_table(g, *table) : max_faces(g);
            res.max_f = mr.max_f;
            res.violates = 2 * mr.max_f <= 3 * n;
            if (res.violates) res.witness = pack(mr.witness.partner);
            res.leaves = mr.matchings_examined;
            const std::lock_guard<std::mutex> lock(r.mu);
            s.results[idx] = std::move(res);
            r.unit_done();
        };
    });
}

SurveyReport partial_report(const SurveyConfig& cfg, const State& s) {
    SurveyReport rep;
    rep.config = cfg;
    rep.tool_version = kToolVersion;
    rep.candidates_examined = s.candidates;
    for (const ClassResult& res : s.results)
        if (res.done) rep.scan_leaves += res.leaves;
    rep.complete = false;
    return rep;
}

SurveyReport assemble(const SurveyConfig& cfg, const State& s) {
    SurveyReport rep;
    rep.config = cfg;
    rep.tool_version = kToolVersion;
    rep.candidates_examined = s.candidates;
    rep.classes.reserve(s.classes.size());
    for (std::size_t i = 0; i < s.classes.size(); ++i) {
        const auto& [code, sweep_rep] = s.classes[i];
        const ClassResult& res = s.results[i];
        const bool mst = res.profile.f12 == 1 && res.profile.f13 == 1 && res.profile.f23 == 1;
        std::optional<Matching> witness;
        if (!res.witness.empty()) witness = Matching::from_partner(unpack(res.witness));
        rep.classes.push_back(ClassRecord{CanonicalForm{code, s.n}, graph_of(s, sweep_rep),
                                          res.profile, mst, res.profile.bipartite, res.max_f,
                                          res.violates, std::move(witness)});
        ++rep.max_f_hist[res.max_f];
        if (mst) {
            ++rep.mst_hist[res.max_f];
            ++rep.mst_count;
        }
        if (res.violates) rep.violator_indices.push_back(i);
        rep.scan_leaves += res.leaves;
    }
    rep.class_count = rep.classes.size();
    rep.complete = true;
    return rep;
}

}  // namespace

SurveyReport run_survey(const SurveyConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    if (cfg.n < 1) throw ValidationError("survey needs n >= 1");
    if (cfg.n > cfg.max_n) {
        std::ostringstream os;
        os << "survey at n=" << cfg.n << " exceeds the configured cap " << cfg.max_n;
        throw CapacityError(os.str());
    }
    if (cfg.n > kMaxEnumerationM)
        throw CapacityError("survey is limited to n <= " + std::to_string(kMaxEnumerationM));
    if (cfg.checkpoint_interval == 0) throw ValidationError("checkpoint interval must be positive");
    const int workers = resolve_worker_count(cfg.workers);

    State state;
    if (!cfg.checkpoint_path.empty() && std::filesystem::exists(cfg.checkpoint_path)) {
        state = load_state(cfg.checkpoint_path, cfg);
    } else {
        state.n = cfg.n;
        state.mode = cfg.mode;
        if (cfg.mode == SurveyMode::all_colored) state.block_size = 1;
        state.block_done.assign(sweep_unit_count(cfg.n, cfg.mode, state.block_size), 0);
    }

    Runner runner{cfg, state};
    const auto finish_time = [&](SurveyReport rep) {
        rep.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return rep;
    };

    if (state.phase == 0) {
        if (cfg.mode == SurveyMode::all_colored)
            sweep_all_colored(runner, workers);
        else
            sweep_rings(runner, workers);
        const bool swept = std::all_of(state.block_done.begin(), state.block_done.end(),
                                       [](std::uint8_t d) { return d != 0; });
        if (!swept) {
            if (!cfg.checkpoint_path.empty()) save_state(state, cfg.checkpoint_path);
            return finish_time(partial_report(cfg, state));
        }
        state.classes.assign(state.class_map.begin(), state.class_map.end());
        state.class_map.clear();
        state.results.assign(state.classes.size(), ClassResult{});
        state.phase = 1;
        if (!cfg.checkpoint_path.empty()) save_state(state, cfg.checkpoint_path);
    }

    const bool maximize_left =
        std::any_of(state.results.begin(), state.results.end(),
                    [](const ClassResult& res) { return !res.done; });
    std::optional<PartialFaceTable> table;
    if (maximize_left && cfg.mode != SurveyMode::all_colored && cfg.n <= 9)
        table = PartialFaceTable::build(cfg.n);
    maximize_classes(runner, workers, table ? &*table : nullptr);
    const bool maximized = std::all_of(state.results.begin(), state.results.end(),
                                       [](const ClassResult& res) { return res.done; });
    if (!maximized) {
        if (!cfg.checkpoint_path.empty()) save_state(state, cfg.checkpoint_path);
        return finish_time(partial_report(cfg, state));
    }
    if (!cfg.checkpoint_path.empty()) save_state(state, cfg.checkpoint_path);
    return finish_time(assemble(cfg, state));
}

std::vector<Violator> find_violators(int n, int workers) {
    SurveyConfig cfg;
    cfg.n = n;
    cfg.mode = SurveyMode::mst_only;
    cfg.workers = workers;
    const SurveyReport rep = run_survey(cfg);
    std::vector<Violator> out;
    for (const std::size_t idx : rep.violator_indices) {
        const ClassRecord& rec = rep.classes[idx];
        MaxFaceOptions exact;
        exact.prune = false;
        const MaxFaceResult mr = max_faces(rec.graph, exact);
        if (mr.max_f != rec.max_f)
            throw std::logic_error("pruned and unpruned maximizations disagree");
        out.push_back(Violator{rec.code, rec.graph, mr.max_f, mr.witness});
    }
    return out;
}

FixtureVerification verify_fixture_set(const std::vector<ColoredGraph>& fixtures) {
    FixtureVerification v;
    std::map<std::string, int> seen;  // code -> first row
    for (std::size_t i = 0; i < fixtures.size(); ++i) {
        const ColoredGraph& g = fixtures[i];
        FixtureCheck c;
        c.row = (int)i + 1;
        c.code = canonical_form(g);
        c.connected = is_connected(g);
        c.mst = is_mst(g);
        c.non_bipartite = !is_bipartite(g);
        c.duplicate = !seen.emplace(c.code.code, c.row).second;
        if (c.duplicate) v.pairwise_distinct = false;
        const bool structurally_sound = c.connected && c.mst && c.non_bipartite && !c.duplicate;
        // The maximization can be enormous on malformed input (e.g. a
        // disconnected double), so rows that already failed skip it.
        c.max_f = structurally_sound ? max_faces(g).max_f : -1;
        if (!structurally_sound && v.all_pass) {
            v.all_pass = false;
            std::ostringstream os;
            os << "row " << c.row << ": ";
            if (!c.connected) os << "not connected";
            else if (!c.mst) os << "not maximally single-trace";
            else if (!c.non_bipartite) os << "bipartite";
            else os << "duplicates row " << seen.at(c.code.code);
            v.failure = os.str();
        }
        v.rows.push_back(std::move(c));
    }
    return v;
}

std::uint64_t count_colored_graphs(int n, int max_n, int workers) {
    SurveyConfig cfg;
    cfg.n = n;
    cfg.mode = SurveyMode::all_colored;
    cfg.workers = workers;
    cfg.max_n = max_n;
    return run_survey(cfg).class_count;
}

}  // namespace wickgraph
