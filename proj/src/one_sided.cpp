#include "cps/one_sided.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>

namespace cps {
namespace {

void require_same_dim(const Chain& a, const Chain& b)
{
    if (a.dim() != b.dim()) throw InvalidArgument("chains must share one dimension");
}

void require_delta(double d)
{
    if (!(d >= 0.0) || !(d < std::numeric_limits<double>::infinity())) {
        throw InvalidArgument("delta must be finite and nonnegative");
    }
}

}  // namespace

OneSidedResult one_sided_cps3f_min(const Chain& a, const Chain& b, double delta1, double delta3)
{
    require_same_dim(a, b);
    require_delta(delta1);
    require_delta(delta3);
    const std::size_t m = a.size();
    const std::size_t n = b.size();
    if (m + n + 1 >= std::numeric_limits<std::uint16_t>::max()) {
        throw InvalidArgument("chains too long for 16-bit vertex counts");
    }
    using V = std::uint16_t;
    const V inf = static_cast<V>(m + n + 1);
    auto inc = [inf](V v) { return std::min<V>(static_cast<V>(v + 1), inf); };

    std::vector<char> near_a(m * m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t p = 0; p < m; ++p) near_a[i * m + p] = euclidean_distance(a[i], a[p]) <= delta1;
    }
    std::vector<char> near_ab(m * n);
    for (std::size_t p = 0; p < m; ++p) {
        for (std::size_t j = 0; j < n; ++j) near_ab[p * n + j] = euclidean_distance(a[p], b[j]) <= delta3;
    }

    // x[(i*n + j)*m + p]: fewest A' vertices for the man at a_i, dog at a_p, woman at b_j.
    std::vector<V> x(m * n * m, inf);
    auto xat = [&](std::size_t i, std::size_t j) { return &x[(i * n + j) * m]; };
    // Running minima over the dog position, one row of (i, j) layers at a time.
    std::vector<V> prev_min(n * m, inf);
    std::vector<V> cur_min(n * m, inf);

    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            V* xc = xat(i, j);
            V* ac = &cur_min[j * m];
            const V* a_up = i > 0 ? &prev_min[j * m] : nullptr;
            const V* a_left = j > 0 ? &cur_min[(j - 1) * m] : nullptr;
            const V* a_diag = i > 0 && j > 0 ? &prev_min[(j - 1) * m] : nullptr;
            const V* x_up = i > 0 ? xat(i - 1, j) : nullptr;
            const V* x_left = j > 0 ? xat(i, j - 1) : nullptr;
            const V* x_diag = i > 0 && j > 0 ? xat(i - 1, j - 1) : nullptr;
            for (std::size_t p = 0; p < m; ++p) {
                V v = inf;
                if (near_a[i * m + p] && near_ab[p * n + j]) {
                    if (i == 0 && j == 0) v = 1;
                    const std::pair<const V*, const V*> preds[3] = {{a_up, x_up}, {a_left, x_left}, {a_diag, x_diag}};
                    for (const auto& [am, xm] : preds) {
                        if (am == nullptr) continue;
                        if (p > 0) v = std::min(v, inc(am[p - 1]));
                        v = std::min(v, xm[p]);
                    }
                    if (p > 0) v = std::min(v, inc(ac[p - 1]));
                }
                xc[p] = v;
                ac[p] = p > 0 ? std::min(ac[p - 1], v) : v;
            }
        }
        std::swap(prev_min, cur_min);
    }

    OneSidedResult res;
    const V* last = xat(m - 1, n - 1);
    std::size_t best_p = 0;
    V best = inf;
    for (std::size_t p = 0; p < m; ++p) {
        if (last[p] < best) {
            best = last[p];
            best_p = p;
        }
    }
    if (best >= inf) return res;
    res.found = true;
    res.length = best;

    // Trace back: both walkers back, man back, woman back, neither; smaller dog index first.
    std::vector<std::size_t> dogs;
    std::size_t i = m - 1;
    std::size_t j = n - 1;
    std::size_t p = best_p;
    while (true) {
        dogs.push_back(p);
        const V v = xat(i, j)[p];
        if (i == 0 && j == 0 && v == 1) break;
        bool found = false;
        const std::pair<std::size_t, std::size_t> steps[4] = {{1, 1}, {1, 0}, {0, 1}, {0, 0}};
        for (const auto& [di, dj] : steps) {
            if (di > i || dj > j) continue;
            const V* xu = xat(i - di, j - dj);
            for (std::size_t p2 = 0; p2 <= p; ++p2) {
                if (p2 == p && di == 0 && dj == 0) continue;
                const V cand = p2 < p ? inc(xu[p2]) : xu[p2];
                if (xu[p2] < inf && cand == v) {
                    i -= di;
                    j -= dj;
                    p = p2;
                    found = true;
                    break;
                }
            }
            if (found) break;
        }
        if (!found) throw std::logic_error("one-sided trace-back lost its path");
    }
    std::reverse(dogs.begin(), dogs.end());
    dogs.erase(std::unique(dogs.begin(), dogs.end()), dogs.end());
    res.a_indices = std::move(dogs);
    return res;
}

OneSidedResult simplify_min_k(const Chain& a, const Chain& b, double delta)
{
    require_same_dim(a, b);
    require_delta(delta);
    const std::size_t m = a.size();
    const std::size_t n = b.size();
    const std::size_t inf = m + n + 1;

    // best[i][j]: shortest simplification of a_i..a_m starting at a_i within
    // delta of b_j..b_n. suffix[i][j] = min over i' >= i of best[i'][j];
    // row m of suffix is all infinity.
    std::vector<std::size_t> best(m * n, inf);
    std::vector<std::size_t> suffix((m + 1) * n, inf);
    auto o = [&](std::size_t i, std::size_t j) -> std::size_t& { return best[i * n + j]; };
    auto s = [&](std::size_t i, std::size_t j) -> std::size_t& { return suffix[i * n + j]; };

    for (std::size_t i = m; i-- > 0;) {
        for (std::size_t j = n; j-- > 0;) {
            if (euclidean_distance(a[i], b[j]) <= delta) {
                if (j == n - 1) {
                    o(i, j) = 1;
                } else {
                    o(i, j) = std::min(o(i, j + 1), std::min(s(i + 1, j + 1) + 1, inf));
                }
            }
            s(i, j) = std::min(s(i + 1, j), o(i, j));
        }
    }

    OneSidedResult res;
    std::size_t start = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (o(i, 0) < o(start, 0)) start = i;
    }
    if (o(start, 0) >= inf) return res;
    res.found = true;
    res.length = o(start, 0);

    // Staying on a_i wins ties against advancing; advancing takes the leftmost vertex.
    std::size_t i = start;
    std::size_t j = 0;
    res.a_indices.push_back(i);
    while (j < n - 1) {
        if (o(i, j + 1) == o(i, j)) {
            ++j;
            continue;
        }
        const std::size_t target = s(i + 1, j + 1);
        std::size_t next = i + 1;
        while (o(next, j + 1) != target) ++next;
        i = next;
        ++j;
        res.a_indices.push_back(i);
    }
    return res;
}

MinDeltaResult simplify_min_delta(const Chain& a, const Chain& b, std::size_t k)
{
    if (k == 0) throw InvalidArgument("k must be at least 1");
    require_same_dim(a, b);
    const auto ds = cross_distances(a, b);
    // The largest distance always admits a single-vertex simplification.
    std::size_t lo = 0;
    std::size_t hi = ds.size() - 1;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        const auto probe = simplify_min_k(a, b, ds[mid]);
        if (probe.found && probe.length <= k) hi = mid;
        else lo = mid + 1;
    }
    MinDeltaResult res;
    res.delta = ds[lo];
    res.a_indices = simplify_min_k(a, b, ds[lo]).a_indices;
    return res;
}

}  // namespace cps
