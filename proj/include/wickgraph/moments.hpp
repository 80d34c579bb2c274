#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wickgraph/colored_graph.hpp"
#include "wickgraph/matching.hpp"

namespace wickgraph {

// Mean of Tr_G over Gaussian random tensors with entrywise variance
// N^{-nu}: summing the Wick pairings gives Σ_M N^{F(M,G) - nu·n}, stored
// exactly as exponent -> number of pairings attaining it.
struct MomentPolynomial {
    int n = 0;
    int nu = 2;
    std::map<int, std::uint64_t> terms;

    std::uint64_t pairing_count() const;  // Σ multiplicities = (2n-1)!!
    int max_exponent() const;
    double evaluate(double big_n) const;
    // Exact N^{nu·n}·⟨Tr_G⟩ = Σ_M N^{F(M,G)} as an integer; throws
    // std::overflow_error when it does not fit.
    std::uint64_t evaluate_scaled(std::uint64_t big_n) const;
};

struct MomentOptions {
    int nu = 2;
    int max_n = 8;       // full (2n-1)!! enumeration refused above this
    bool force = false;  // lift the guard deliberately
    int workers = 0;     // 0: WICKGRAPH_WORKERS env, else hardware count
};

MomentPolynomial moment_polynomial(const ColoredGraph& g, const MomentOptions& opts = {});

// Monte-Carlo cross-check: sample tensors entrywise i.i.d. centered
// Gaussian with variance N^{-nu} and average the exactly-contracted Tr_G.
// Bit-deterministic for a fixed seed: per-block generator seeds derive from
// the master seed, and block results merge in block order.
struct McOptions {
    int big_n = 2;
    std::uint64_t samples = 100000;
    std::uint64_t seed = 1;
    int nu = 2;
    std::uint64_t block = 16384;  // samples per block
    int workers = 0;
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::string generator;  // pinned scheme name
};

inline constexpr const char* kMcGeneratorName = "mt19937_64/box-muller/v1";

// pre: big_n <= 6 and n <= 4 (cost grows like N^3 per vertex and worse on
// wide graphs); violations raise CapacityError.
McEstimate mc_estimate(const ColoredGraph& g, const McOptions& opts);

// Exact Tr_G(T) for a concrete tensor (row-major [a1][a2][a3], side
// big_n), contracting vertex by vertex with a boundary of open slots.
// Exposed so tests can drive the estimator's inner loop directly.
double trace_invariant(const ColoredGraph& g, const std::vector<double>& tensor, int big_n);

// Leading-order comparison of ⟨Tr_G Tr_G⟩ against ⟨Tr_G⟩²: with the
// threshold max_f > 3n/2, `violates` means the product's leading power is
// not dominated by the square of the mean.
struct FactorizationDiagnostic {
    int n = 0;
    int nu = 2;
    int max_f = 0;
    bool violates = false;            // 2·max_f <= 3·n
    int single_leading_exponent = 0;  // max_f - nu·n
    // Exact doubled-graph maximum; only computed for n <= 3 where the
    // 4n-vertex enumeration stays tiny.
    std::optional<int> pair_max_f;
    std::optional<int> pair_leading_exponent;        // pair_max_f - nu·2n
    std::optional<bool> pair_exceeds_disjoint;       // pair_max_f > 2·max_f
};

FactorizationDiagnostic factorization_diagnostic(const ColoredGraph& g, int nu = 2);

}  // namespace wickgraph
