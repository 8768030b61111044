#include <algorithm>
#include <chrono>
#include <cstdint>
#include <deque>
#include <limits>

#include "cps/solver.hpp"

namespace cps {

CpsSolution cps3f_min_graph(const Chain& a, const Chain& b, const CpsParams& params)
{
    params.validate();
    if (a.dim() != b.dim()) throw InvalidArgument("chains must share one dimension");
    const auto start = std::chrono::steady_clock::now();

    const std::size_t m = a.size();
    const std::size_t n = b.size();
    const bool free_dogs = params.endpoint_mode == EndpointMode::free_dogs;

    // Vertex ids over the full configuration grid; -1 marks impossible ones.
    auto grid_index = [&](const Configuration& c) { return ((c.i * m + c.p) * n + c.j) * n + c.q; };
    std::vector<std::int32_t> vertex_of(m * m * n * n, -1);
    std::vector<Configuration> vertices;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t p = 0; p < m; ++p) {
            if (!(euclidean_distance(a[i], a[p]) <= params.delta1)) continue;
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t q = 0; q < n; ++q) {
                    if (!(euclidean_distance(b[j], b[q]) <= params.delta2)) continue;
                    if (!(euclidean_distance(a[p], b[q]) <= params.delta3)) continue;
                    Configuration c{i, p, j, q};
                    vertex_of[grid_index(c)] = static_cast<std::int32_t>(vertices.size());
                    vertices.push_back(c);
                }
            }
        }
    }

    auto is_initial = [&](const Configuration& c) {
        return c.i == 0 && c.j == 0 && (free_dogs || (c.p == 0 && c.q == 0));
    };
    auto is_final = [&](const Configuration& c) {
        return c.i == m - 1 && c.j == n - 1 && (free_dogs || (c.p == m - 1 && c.q == n - 1));
    };

    // Edges u -> v with i <= i' <= i+1, p <= p', j <= j' <= j+1, q <= q'.
    // Edges entering an initial configuration are dropped so that every
    // initial configuration is a root.
    struct Edge {
        std::int32_t from;
        std::uint8_t w_a;
        std::uint8_t w_b;
    };
    const std::size_t nv = vertices.size();
    std::vector<std::vector<std::int32_t>> out_edges(nv);
    std::vector<std::vector<Edge>> in_edges(nv);
    for (std::size_t u = 0; u < nv; ++u) {
        const auto cu = vertices[u];
        for (std::size_t i2 = cu.i; i2 <= std::min(cu.i + 1, m - 1); ++i2) {
            for (std::size_t j2 = cu.j; j2 <= std::min(cu.j + 1, n - 1); ++j2) {
                for (std::size_t p2 = cu.p; p2 < m; ++p2) {
                    for (std::size_t q2 = cu.q; q2 < n; ++q2) {
                        const Configuration cv{i2, p2, j2, q2};
                        if (cv == cu) continue;
                        const auto v = vertex_of[grid_index(cv)];
                        if (v < 0 || is_initial(cv)) continue;
                        out_edges[u].push_back(v);
                        in_edges[static_cast<std::size_t>(v)].push_back(
                            {static_cast<std::int32_t>(u), static_cast<std::uint8_t>(cu.p < p2),
                             static_cast<std::uint8_t>(cu.q < q2)});
                    }
                }
            }
        }
    }

    // Kahn's algorithm.
    std::vector<std::size_t> indegree(nv);
    for (std::size_t v = 0; v < nv; ++v) indegree[v] = in_edges[v].size();
    std::deque<std::size_t> ready;
    for (std::size_t v = 0; v < nv; ++v) {
        if (indegree[v] == 0) ready.push_back(v);
    }
    std::vector<std::size_t> order;
    order.reserve(nv);
    while (!ready.empty()) {
        const auto u = ready.front();
        ready.pop_front();
        order.push_back(u);
        for (auto v : out_edges[u]) {
            if (--indegree[static_cast<std::size_t>(v)] == 0) ready.push_back(static_cast<std::size_t>(v));
        }
    }

    // hops[v][r]: fewest hops of the B dog reaching v with at most r hops of the A dog.
    const std::uint32_t inf = std::numeric_limits<std::uint32_t>::max();
    const std::size_t hop_len = m;
    std::vector<std::uint32_t> hops(nv * hop_len, inf);
    CpsSolution sol;
    sol.stats.possible_configurations = nv;
    sol.stats.peak_cells = hops.size();

    for (auto v : order) {
        std::uint32_t* xv = &hops[v * hop_len];
        if (is_initial(vertices[v])) {
            if (in_edges[v].empty()) std::fill(xv, xv + hop_len, 0u);
            continue;
        }
        for (const auto& e : in_edges[v]) {
            const std::uint32_t* xu = &hops[static_cast<std::size_t>(e.from) * hop_len];
            for (std::size_t r = 0; r < hop_len; ++r) {
                std::uint32_t base = inf;
                if (e.w_a == 0) base = xu[r];
                else if (r > 0) base = xu[r - 1];
                if (base == inf) continue;
                xv[r] = std::min(xv[r], base + e.w_b);
            }
        }
    }

    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (std::size_t v = 0; v < nv; ++v) {
        if (!is_final(vertices[v])) continue;
        const std::uint32_t* xv = &hops[v * hop_len];
        for (std::size_t r = 0; r < hop_len; ++r) {
            if (xv[r] == inf) continue;
            // Hops count the steps between simplification vertices.
            best = std::min(best, std::max<std::size_t>(r, xv[r]) + 1);
        }
    }
    if (best != std::numeric_limits<std::size_t>::max()) {
        sol.status = SolveStatus::optimal;
        sol.k_star = best;
    }
    sol.stats.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return sol;
}

}  // namespace cps
