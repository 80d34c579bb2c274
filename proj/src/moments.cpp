#include "wickgraph/moments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <random>
#include <stdexcept>
#include <thread>
#include <utility>

#include "wickgraph/parallel.hpp"

namespace wickgraph {
namespace {

std::vector<std::uint64_t> face_histogram_range(const ColoredGraph& g, std::uint64_t lo,
                                                std::uint64_t hi) {
    std::vector<std::uint64_t> hist(3 * g.n() + 1, 0);
    const std::vector<int>* e[3] = {&g.partners(1), &g.partners(2), &g.partners(3)};
    for_each_matching_range(g.n(), lo, hi, [&](const std::vector<int>& m0, std::uint64_t) {
        const int f = union_cycles(m0, *e[0]) + union_cycles(m0, *e[1]) + union_cycles(m0, *e[2]);
        ++hist[f];
    });
    return hist;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Standard normals from mt19937_64 via Box-Muller, one cached per pair.
// The scheme is pinned under kMcGeneratorName; changing it is a format break.
class GaussianSource {
  public:
    explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - unit();  // (0,1]: keeps the log finite
        const double u2 = unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(t);
        has_spare_ = true;
        return r * std::cos(t);
    }

  private:
    double unit() { return (double)(rng_() >> 11) * 0x1.0p-53; }  // [0,1)

    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

struct BlockStats {
    double sum = 0.0;
    double sum_sq = 0.0;
};

}  // namespace

std::uint64_t MomentPolynomial::pairing_count() const {
    std::uint64_t total = 0;
    for (const auto& [e, mult] : terms) {
        (void)e;
        total += mult;
    }
    return total;
}

int MomentPolynomial::max_exponent() const {
    if (terms.empty()) throw ValidationError("empty moment polynomial has no exponent");
    return terms.rbegin()->first;
}

double MomentPolynomial::evaluate(double big_n) const {
    double total = 0.0;
    for (const auto& [e, mult] : terms) total += (double)mult * std::pow(big_n, e);
    return total;
}

std::uint64_t MomentPolynomial::evaluate_scaled(std::uint64_t big_n) const {
    if (big_n == 0) throw ValidationError("evaluate_scaled needs N >= 1");
    unsigned __int128 total = 0;
    for (const auto& [e, mult] : terms) {
        const int f = e + nu * n;  // the unscaled face count, always >= 0
        if (f < 0) throw ValidationError("negative scaled exponent");
        unsigned __int128 p = 1;
        for (int i = 0; i < f; ++i) {
            p *= big_n;
            if (p > (unsigned __int128)UINT64_MAX) throw std::overflow_error("N^F overflows");
        }
        total += (unsigned __int128)mult * p;
        if (total > (unsigned __int128)UINT64_MAX)
            throw std::overflow_error("scaled moment overflows uint64");
    }
    return (std::uint64_t)total;
}

MomentPolynomial moment_polynomial(const ColoredGraph& g, const MomentOptions& opts) {
    const int n = g.n();
    if (opts.nu < 0) throw ValidationError("nu must be non-negative");
    if (n > opts.max_n && !opts.force)
        throw CapacityError("moment enumeration over (2n-1)!! pairings refused for n = " +
                            std::to_string(n) + " (cap " + std::to_string(opts.max_n) +
                            "; set force to override)");
    if (n > kMaxEnumerationM)
        throw CapacityError("matching enumeration is limited to n <= " +
                            std::to_string(kMaxEnumerationM));

    const std::uint64_t count = matching_count(n);
    const int workers = (int)std::min<std::uint64_t>(resolve_worker_count(opts.workers), count);
    std::vector<std::uint64_t> hist;
    if (workers <= 1) {
        hist = face_histogram_range(g, 0, count);
    } else {
        std::vector<std::vector<std::uint64_t>> parts(workers);
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            const std::uint64_t lo = count / workers * w + std::min<std::uint64_t>(w, count % workers);
            const std::uint64_t hi =
                count / workers * (w + 1) + std::min<std::uint64_t>(w + 1, count % workers);
            pool.emplace_back([&, w, lo, hi] { parts[w] = face_histogram_range(g, lo, hi); });
        }
        for (auto& t : pool) t.join();
        hist.assign(3 * n + 1, 0);
        for (const auto& part : parts)
            for (std::size_t f = 0; f < part.size(); ++f) hist[f] += part[f];
    }

    MomentPolynomial poly;
    poly.n = n;
    poly.nu = opts.nu;
    for (int f = 0; f <= 3 * n; ++f)
        if (hist[f]) poly.terms[f - opts.nu * n] = hist[f];
    return poly;
}

double trace_invariant(const ColoredGraph& g, const std::vector<double>& tensor, int big_n) {
    if (big_n < 1) throw ValidationError("tensor side must be >= 1");
    const std::size_t nn = (std::size_t)big_n;
    if (tensor.size() != nn * nn * nn)
        throw ValidationError("tensor has " + std::to_string(tensor.size()) +
                              " entries, expected N^3 = " + std::to_string(nn * nn * nn));
    constexpr std::size_t kBoundaryCap = std::size_t(1) << 22;

    // Sweep vertices in order, keeping one amplitude per assignment of the
    // boundary: the (vertex, color) slots still waiting for their partner.
    std::vector<std::pair<int, int>> open;
    std::vector<double> amp{1.0};
    for (int v = 0; v < 2 * g.n(); ++v) {
        int bound[3];
        int fresh = 0;
        for (int c = 0; c < 3; ++c) {
            const int u = g.partner(c + 1, v);
            bound[c] = -1;
            if (u < v) {
                for (std::size_t i = 0; i < open.size(); ++i)
                    if (open[i] == std::make_pair(u, c)) bound[c] = (int)i;
            } else {
                ++fresh;
            }
        }
        std::vector<int> kept;
        for (int i = 0; i < (int)open.size(); ++i)
            if (i != bound[0] && i != bound[1] && i != bound[2]) kept.push_back(i);

        std::size_t fresh_size = 1, next_size = 1;
        for (int i = 0; i < fresh; ++i) fresh_size *= nn;
        for (std::size_t i = 0; i < kept.size(); ++i) next_size *= nn;
        next_size *= fresh_size;
        if (next_size > kBoundaryCap)
            throw CapacityError("contraction boundary exceeds " + std::to_string(kBoundaryCap) +
                                " amplitudes at vertex " + std::to_string(v));
        std::vector<double> next(next_size, 0.0);

        const int width = (int)open.size();
        std::vector<int> digit(width);
        for (std::size_t lin = 0; lin < amp.size(); ++lin) {
            const double a = amp[lin];
            if (a == 0.0) continue;
            std::size_t rest = lin;
            for (int i = width - 1; i >= 0; --i) {
                digit[i] = (int)(rest % nn);
                rest /= nn;
            }
            std::size_t kept_base = 0;
            for (const int i : kept) kept_base = kept_base * nn + digit[i];
            for (std::size_t flin = 0; flin < fresh_size; ++flin) {
                std::size_t frest = flin;
                int idx[3];
                for (int c = 2; c >= 0; --c) {
                    if (bound[c] >= 0) {
                        idx[c] = digit[bound[c]];
                    } else {
                        idx[c] = (int)(frest % nn);
                        frest /= nn;
                    }
                }
                next[kept_base * fresh_size + flin] +=
                    a * tensor[((std::size_t)idx[0] * nn + idx[1]) * nn + idx[2]];
            }
        }

        std::vector<std::pair<int, int>> next_open;
        for (const int i : kept) next_open.push_back(open[i]);
        for (int c = 0; c < 3; ++c)
            if (bound[c] < 0) next_open.emplace_back(v, c);
        open = std::move(next_open);
        amp = std::move(next);
    }
    return amp[0];
}

McEstimate mc_estimate(const ColoredGraph& g, const McOptions& opts) {
    const int n = g.n();
    if (opts.big_n < 1 || opts.big_n > 6)
        throw CapacityError("mc_estimate supports 1 <= N <= 6, got " + std::to_string(opts.big_n));
    if (n > 4)
        throw CapacityError("mc_estimate supports n <= 4, got " + std::to_string(n));
    if (opts.samples < 2) throw ValidationError("mc_estimate needs at least 2 samples");
    if (opts.block == 0) throw ValidationError("block size must be positive");
    if (opts.nu < 0) throw ValidationError("nu must be non-negative");

    const std::size_t nn = (std::size_t)opts.big_n;
    const double sigma = std::pow((double)opts.big_n, -opts.nu / 2.0);
    const std::uint64_t blocks = (opts.samples + opts.block - 1) / opts.block;

    std::vector<BlockStats> stats(blocks);
    std::atomic<std::uint64_t> next_block{0};
    auto run_blocks = [&] {
        std::vector<double> tensor(nn * nn * nn);
        for (;;) {
            const std::uint64_t b = next_block.fetch_add(1);
            if (b >= blocks) return;
            const std::uint64_t lo = b * opts.block;
            const std::uint64_t hi = std::min(opts.samples, lo + opts.block);
            GaussianSource gauss(splitmix64(opts.seed + (b + 1) * 0x9e3779b97f4a7c15ull));
            BlockStats s;
            for (std::uint64_t i = lo; i < hi; ++i) {
                for (double& t : tensor) t = sigma * gauss.next();
                const double tr = trace_invariant(g, tensor, opts.big_n);
                s.sum += tr;
                s.sum_sq += tr * tr;
            }
            stats[b] = s;
        }
    };

    const int workers = (int)std::min<std::uint64_t>(resolve_worker_count(opts.workers), blocks);
    if (workers <= 1) {
        run_blocks();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(run_blocks);
        for (auto& t : pool) t.join();
    }

    // Merge in block order so the result is independent of thread timing.
    double sum = 0.0, sum_sq = 0.0;
    for (const BlockStats& s : stats) {
        sum += s.sum;
        sum_sq += s.sum_sq;
    }
    const double count = (double)opts.samples;
    const double mean = sum / count;
    const double var = std::max(0.0, (sum_sq - count * mean * mean) / (count - 1.0));

    McEstimate est;
    est.mean = mean;
    est.std_error = std::sqrt(var / count);
    est.samples = opts.samples;
    est.seed = opts.seed;
    est.generator = kMcGeneratorName;
    return est;
}

FactorizationDiagnostic factorization_diagnostic(const ColoredGraph& g, int nu) {
    if (!is_connected(g)) throw ValidationError("factorization diagnostic requires a connected graph");
    if (nu < 0) throw ValidationError("nu must be non-negative");
    const int n = g.n();

    FactorizationDiagnostic d;
    d.n = n;
    d.nu = nu;
    d.max_f = max_faces(g).max_f;
    d.violates = 2 * d.max_f <= 3 * n;
    d.single_leading_exponent = d.max_f - nu * n;
    if (n <= 3) {
        const ColoredGraph pair = disjoint_union(g, g);
        const int pf = max_faces(pair).max_f;
        d.pair_max_f = pf;
        d.pair_leading_exponent = pf - nu * 2 * n;
        d.pair_exceeds_disjoint = pf > 2 * d.max_f;
    }
    return d;
}

}  // namespace wickgraph
