#pragma once

// Exhaustive reference solvers and the set-partition instance generator.
// Everything here is exponential and guarded by explicit size limits.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cps/geometry.hpp"
#include "cps/solver.hpp"

namespace cps::oracle {

/// Raised when an input exceeds an exhaustive solver's size limit.
class SizeGuardExceeded : public std::length_error {
public:
    using std::length_error::length_error;
};

inline constexpr std::size_t kMaxChainLength = 12;
inline constexpr std::size_t kMaxPartitionSize = 20;

/// Minimum over all monotone couplings of the largest pair distance,
/// enumerating every coupling explicitly.
double brute_frechet(const Chain& a, const Chain& b);

/// Minimum max(|A'|, |B'|) over all subsequence pairs meeting the three
/// distance bounds; nullopt if none does.
std::optional<std::size_t> brute_cps3f(const Chain& a, const Chain& b, const CpsParams& params);

/// Weighted counterpart: minimum max(C(A'), C(B')).
std::optional<double> brute_wcps3f(const Chain& a, const Chain& b, const CpsParams& params);

/// Shortest A' with d_dF(A, A') <= delta1 and d_dF(A', B) <= delta3.
std::optional<std::size_t> brute_one_sided(const Chain& a, const Chain& b, double delta1, double delta3);

/// Shortest A' with d_dF(A', B) <= delta.
std::optional<std::size_t> brute_min_k(const Chain& a, const Chain& b, double delta);

/// Smallest d_dF(A', B) over A' with at most k vertices.
double brute_min_delta(const Chain& a, const Chain& b, std::size_t k);

/// Equal-sum bipartition of the multiset exists.
bool partition_brute(const std::vector<unsigned>& set);

struct ReductionInstance {
    Chain a;
    Chain b;
    CpsParams params;
    double budget = 0.0;
    std::vector<unsigned> source_set;
};

/// Two planar chains of length 2|S| whose weighted simplification at the
/// returned budget exists iff S has an equal-sum bipartition.
///
/// a_{2i-1} = (i, 1), a_{2i} = (i + 0.2, 1), b_{2i-1} = (i, 0), b_{2i} = (i + 0.2, 0);
/// S's elements weigh a_{2i-1} and b_{2i}, the rest weigh zero. The positive
/// variant adds 1 to every weight and n to the budget. The self-leash bound is
/// the largest realized |a_{2i} - a_{2i-1}| (0.2 up to rounding of i + 0.2).
ReductionInstance make_reduction_instance(const std::vector<unsigned>& set, bool positive_variant);

}  // namespace cps::oracle
