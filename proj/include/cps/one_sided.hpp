#pragma once

// Simplifying only chain A against a fixed chain B.

#include <cstddef>
#include <vector>

#include "cps/geometry.hpp"

namespace cps {

struct OneSidedResult {
    bool found = false;
    /// Length of the optimal A'.
    std::size_t length = 0;
    /// 0-based indices of A' in A.
    std::vector<std::size_t> a_indices;
};

/// Shortest A' (vertices of A, free first and last vertex) with
/// d_dF(A, A') <= delta1 and d_dF(A', B) <= delta3.
OneSidedResult one_sided_cps3f_min(const Chain& a, const Chain& b, double delta1, double delta3);

/// Shortest A' (vertices of A, free first and last vertex) with d_dF(A', B) <= delta.
OneSidedResult simplify_min_k(const Chain& a, const Chain& b, double delta);

struct MinDeltaResult {
    double delta = 0.0;
    std::vector<std::size_t> a_indices;
};

/// Smallest d_dF(A', B) over A' with at most k vertices of A. The optimum is
/// always one of the distances d(a_i, b_j); it is found by bisecting that set.
MinDeltaResult simplify_min_delta(const Chain& a, const Chain& b, std::size_t k);

}  // namespace cps
