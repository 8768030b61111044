#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "cps/geometry.hpp"
#include "cps/solver.hpp"

namespace cps::testing {

inline Chain random_chain(std::mt19937_64& rng, std::size_t len, std::size_t dim = 2)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Point> pts;
    for (std::size_t k = 0; k < len; ++k) {
        if (dim == 2) pts.emplace_back(u(rng), u(rng));
        else pts.emplace_back(u(rng), u(rng), u(rng));
    }
    return Chain(std::move(pts));
}

inline Chain line_chain(std::initializer_list<std::pair<double, double>> xy)
{
    std::vector<Point> pts;
    for (auto [x, y] : xy) pts.emplace_back(x, y);
    return Chain(std::move(pts));
}

/// Distances d(a_i,a_p), d(b_j,b_q) and d(a_p,b_q) pooled together.
inline std::vector<double> all_distances(const Chain& a, const Chain& b)
{
    std::vector<double> d;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < a.size(); ++k) d.push_back(euclidean_distance(a[i], a[k]));
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) d.push_back(euclidean_distance(b[i], b[k]));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) d.push_back(euclidean_distance(a[i], b[k]));
    std::sort(d.begin(), d.end());
    return d;
}

/// Deltas drawn from observed pairwise distances.
inline CpsParams random_params(std::mt19937_64& rng, const Chain& a, const Chain& b, EndpointMode mode)
{
    const auto d = all_distances(a, b);
    std::uniform_int_distribution<std::size_t> pick(0, d.size() - 1);
    CpsParams p;
    p.delta1 = d[pick(rng)];
    p.delta2 = d[pick(rng)];
    p.delta3 = d[pick(rng)];
    p.endpoint_mode = mode;
    return p;
}

inline bool witness_ok(const Chain& a, const Chain& b, const CpsParams& params, const CpsSolution& sol)
{
    if (sol.a_indices.empty() || sol.b_indices.empty()) return false;
    if (!verify_simplification(a, sol.a_indices, params.delta1)) return false;
    if (!verify_simplification(b, sol.b_indices, params.delta2)) return false;
    if (params.endpoint_mode == EndpointMode::anchored) {
        if (sol.a_indices.front() != 0 || sol.a_indices.back() != a.size() - 1) return false;
        if (sol.b_indices.front() != 0 || sol.b_indices.back() != b.size() - 1) return false;
    }
    const auto sa = a.subsequence(sol.a_indices);
    const auto sb = b.subsequence(sol.b_indices);
    return discrete_frechet(sa, sb).value <= params.delta3;
}

}  // namespace cps::testing
