#pragma once

// Exact solvers for chain pair simplification under the discrete Frechet
// distance: minimize max(|A'|, |B'|) over subsequences A' of A and B' of B with
//   d_dF(A, A') <= delta1,  d_dF(B, B') <= delta2,  d_dF(A', B') <= delta3.
//
// The search walks a "gang" of four walkers: a man on A with his dog on A, and
// a woman on B with her dog on B. The dogs' footprints are the simplifications.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "cps/geometry.hpp"

namespace cps {

enum class EndpointMode {
    /// A' runs from a_1 to a_m and B' from b_1 to b_n.
    anchored,
    /// A' and B' may start and end at any vertex the leashes allow.
    free_dogs,
};

std::string_view to_string(EndpointMode mode);
EndpointMode endpoint_mode_from_string(std::string_view text);

struct CpsParams {
    double delta1 = 0.0;
    double delta2 = 0.0;
    double delta3 = 0.0;
    EndpointMode endpoint_mode = EndpointMode::free_dogs;
    /// Upper bound on the number of A' vertices explored by the dynamic program.
    std::optional<std::size_t> r_cap;

    /// Throws InvalidArgument on negative or non-finite deltas or a zero r_cap.
    void validate() const;
};

/// Position of the gang: man at a_i, his dog at a_p, woman at b_j, her dog at b_q.
struct Configuration {
    std::size_t i = 0;
    std::size_t p = 0;
    std::size_t j = 0;
    std::size_t q = 0;

    friend bool operator==(const Configuration&, const Configuration&) = default;
};

enum class SolveStatus {
    optimal,
    no_solution,
    /// Nothing within the r-cap was at most the cap, so optimality is unproven.
    r_cap_inconclusive,
    /// The deadline passed before the solve finished.
    timed_out,
};

std::string_view to_string(SolveStatus status);

struct SolveStats {
    std::uint64_t possible_configurations = 0;
    std::uint64_t peak_cells = 0;
    double elapsed_seconds = 0.0;
};

struct CpsSolution {
    SolveStatus status = SolveStatus::no_solution;
    /// max(|A'|, |B'|); meaningful when status is optimal.
    std::size_t k_star = 0;
    /// 0-based vertex indices of A' and B' (filled when reconstruction was requested).
    std::vector<std::size_t> a_indices;
    std::vector<std::size_t> b_indices;
    SolveStats stats;

    [[nodiscard]] bool solved() const { return status == SolveStatus::optimal; }
};

/// Raised when reconstruction would need more DP cells than the configured budget.
class MemoryBudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Read-only view of one (i, j) layer of the dynamic program, for diagnostics.
///
/// Only the dog positions listed in `a_dogs` (resp. `b_dogs`) are stored; every
/// other position holds the infinity sentinel implicitly. Arrays are laid out
/// as [a_dog][b_dog][r] with `r_len` entries per dog pair; entry r is the best
/// value with at most r+1 A' vertices (or weight at most the r-th obtainable sum).
template <class Value>
struct LayerView {
    std::size_t i = 0;
    std::size_t j = 0;
    std::span<const std::uint32_t> a_dogs;
    std::span<const std::uint32_t> b_dogs;
    std::size_t r_len = 0;
    Value infinity{};
    std::span<const Value> x;
    std::span<const Value> c;  // running min over the A dog
    std::span<const Value> r;  // running min over the B dog
    std::span<const Value> t;  // running min over both dogs
};

struct DpOptions {
    bool reconstruct = false;
    /// Reconstruction refuses instances whose stored layers need more bytes than this.
    std::uint64_t memory_budget = 2ULL << 30;
    std::optional<std::chrono::steady_clock::time_point> deadline;
    /// Called after every (i, j) layer of the unweighted solver (in the
    /// solver's internal orientation, which may have A and B swapped).
    std::function<void(const LayerView<std::uint16_t>&)> on_layer;
};

/// Reference solver: explicit configuration DAG, topological order, per-vertex
/// hop arrays. Memory is cubic in m*n; use only on small inputs.
CpsSolution cps3f_min_graph(const Chain& a, const Chain& b, const CpsParams& params);

/// Dynamic program over (i, j) layers with running-minimum tables.
///
/// Value-only mode keeps just the frontier of layers alive. With
/// `options.reconstruct` every layer's X table is kept and a witness pair of
/// simplifications is traced back.
CpsSolution cps3f_min_dp(const Chain& a, const Chain& b, const CpsParams& params,
                         const DpOptions& options = {});

/// Is there a simplification pair with max(|A'|, |B'|) <= k?
bool cps3f_decision(const Chain& a, const Chain& b, std::size_t k, const CpsParams& params);

/// Sorted distinct sums of the nonempty subsets of the chain's vertex weights.
///
/// Throws InvalidArgument if a sum is not finite or more than `max_count`
/// distinct sums arise.
std::vector<double> obtainable_weights(const Chain& chain, std::size_t max_count = 1u << 22);

struct WeightedSolution {
    /// max(C(A'), C(B')); meaningful when solution.status is optimal.
    double k_star_weight = 0.0;
    /// solution.k_star is max(|A'|, |B'|) of the witness when reconstructed.
    CpsSolution solution;
};

/// Weighted variant: minimize max(C(A'), C(B')) where C sums vertex weights.
/// Weights must be nonnegative; r_cap is not supported here.
WeightedSolution wcps3f_min(const Chain& a, const Chain& b, const CpsParams& params,
                            const DpOptions& options = {});

/// Is there a simplification pair with C(A') <= k and C(B') <= k?
bool wcps3f_decision(const Chain& a, const Chain& b, double k, const CpsParams& params);

}  // namespace cps
