#include <algorithm>
#include <cstdint>
#include <limits>
#include <type_traits>

#include <fmt/format.h>

#include "cps/solver.hpp"

namespace cps {
namespace {

using Clock = std::chrono::steady_clock;

// For every walker position i, the sorted dog positions within leash range,
// plus index maps from list i into list i-1 used to address the previous
// layer: `below` is the last entry < value, `equal` the entry == value (-1 if none).
struct Leash {
    std::vector<std::vector<std::uint32_t>> near;
    std::vector<std::vector<std::int32_t>> below_prev;
    std::vector<std::vector<std::int32_t>> equal_prev;
    std::vector<std::int32_t> below_self;
    std::vector<std::int32_t> equal_self;
};

Leash make_leash(const Chain& chain, double delta)
{
    const auto len = chain.size();
    Leash leash;
    leash.near.resize(len);
    for (std::size_t i = 0; i < len; ++i) {
        for (std::size_t p = 0; p < len; ++p) {
            if (euclidean_distance(chain[i], chain[p]) <= delta) {
                leash.near[i].push_back(static_cast<std::uint32_t>(p));
            }
        }
    }
    leash.below_prev.resize(len);
    leash.equal_prev.resize(len);
    for (std::size_t i = 1; i < len; ++i) {
        const auto& cur = leash.near[i];
        const auto& prev = leash.near[i - 1];
        for (auto p : cur) {
            auto it = std::lower_bound(prev.begin(), prev.end(), p);
            leash.below_prev[i].push_back(static_cast<std::int32_t>(it - prev.begin()) - 1);
            leash.equal_prev[i].push_back(
                it != prev.end() && *it == p ? static_cast<std::int32_t>(it - prev.begin()) : -1);
        }
    }
    for (std::size_t k = 0; k < len; ++k) {
        leash.below_self.push_back(static_cast<std::int32_t>(k) - 1);
        leash.equal_self.push_back(static_cast<std::int32_t>(k));
    }
    return leash;
}

// Hop counting: entry r bounds |A'| by r+1, values count |B'|.
struct HopPolicy {
    using Value = std::uint16_t;

    Value inf;
    std::size_t r_limit;

    [[nodiscard]] std::size_t r_len(std::size_t max_dog) const { return std::min(r_limit, max_dog + 1); }
    [[nodiscard]] Value init(std::size_t, std::size_t, std::size_t) const { return 1; }
    [[nodiscard]] double a_amount(std::size_t r) const { return static_cast<double>(r + 1); }
    [[nodiscard]] Value add_b(Value v, std::size_t) const { return std::min<Value>(static_cast<Value>(v + 1), inf); }
    [[nodiscard]] std::int64_t prev_r(std::size_t, std::size_t r) const { return static_cast<std::int64_t>(r) - 1; }

    // x[r] = min(x[r], src[r] (+1)); entries past src_len repeat the last one.
    void relax_stay(Value* x, const Value* src, std::size_t src_len, std::size_t len, bool add, std::size_t) const
    {
        const int inc = add ? 1 : 0;
        const std::size_t n1 = std::min(len, src_len);
        for (std::size_t r = 0; r < n1; ++r) {
            const Value v = std::min<Value>(static_cast<Value>(src[r] + inc), inf);
            x[r] = std::min(x[r], v);
        }
        if (n1 < len) {
            const Value v = std::min<Value>(static_cast<Value>(src[src_len - 1] + inc), inf);
            for (std::size_t r = n1; r < len; ++r) x[r] = std::min(x[r], v);
        }
    }

    // x[r] = min(x[r], src[r-1] (+1)): the A dog stepped onto a new vertex.
    void relax_move(Value* x, const Value* src, std::size_t src_len, std::size_t len, bool add, std::size_t,
                    std::size_t) const
    {
        const int inc = add ? 1 : 0;
        const std::size_t n1 = std::min(len, src_len + 1);
        for (std::size_t r = 1; r < n1; ++r) {
            const Value v = std::min<Value>(static_cast<Value>(src[r - 1] + inc), inf);
            x[r] = std::min(x[r], v);
        }
        if (n1 < len) {
            const Value v = std::min<Value>(static_cast<Value>(src[src_len - 1] + inc), inf);
            for (std::size_t r = std::max<std::size_t>(n1, 1); r < len; ++r) x[r] = std::min(x[r], v);
        }
    }
};

// Weighted: entry r bounds C(A') by sums[r], values are C(B').
struct WeightPolicy {
    using Value = double;

    Value inf = std::numeric_limits<double>::infinity();
    const Chain* a = nullptr;
    const Chain* b = nullptr;
    std::vector<double> sums;
    // prev[p][r]: index of the largest obtainable sum <= sums[r] - C(a_p), or -1.
    std::vector<std::vector<std::int32_t>> prev;

    WeightPolicy(const Chain& chain_a, const Chain& chain_b, std::vector<double> obtainable)
        : a(&chain_a), b(&chain_b), sums(std::move(obtainable))
    {
        prev.resize(a->size());
        for (std::size_t p = 0; p < a->size(); ++p) {
            prev[p].resize(sums.size());
            for (std::size_t r = 0; r < sums.size(); ++r) {
                const double budget = sums[r] - a->weight(p);
                auto it = std::upper_bound(sums.begin(), sums.end(), budget);
                prev[p][r] = static_cast<std::int32_t>(it - sums.begin()) - 1;
            }
        }
    }

    [[nodiscard]] std::size_t r_len(std::size_t) const { return sums.size(); }
    [[nodiscard]] Value init(std::size_t p, std::size_t q, std::size_t r) const
    {
        return a->weight(p) <= sums[r] ? b->weight(q) : inf;
    }
    [[nodiscard]] double a_amount(std::size_t r) const { return sums[r]; }
    [[nodiscard]] Value add_b(Value v, std::size_t q) const { return v + b->weight(q); }
    [[nodiscard]] std::int64_t prev_r(std::size_t p, std::size_t r) const { return prev[p][r]; }

    void relax_stay(Value* x, const Value* src, std::size_t src_len, std::size_t len, bool add, std::size_t q) const
    {
        const double inc = add ? b->weight(q) : 0.0;
        for (std::size_t r = 0; r < len; ++r) x[r] = std::min(x[r], src[std::min(r, src_len - 1)] + inc);
    }

    void relax_move(Value* x, const Value* src, std::size_t src_len, std::size_t len, bool add, std::size_t p,
                    std::size_t q) const
    {
        const double inc = add ? b->weight(q) : 0.0;
        const auto& pr = prev[p];
        for (std::size_t r = 0; r < len; ++r) {
            if (pr[r] < 0) continue;
            x[r] = std::min(x[r], src[std::min<std::size_t>(static_cast<std::size_t>(pr[r]), src_len - 1)] + inc);
        }
    }
};

template <class V>
struct Cell {
    std::size_t np = 0;
    std::size_t nq = 0;
    std::size_t r_len = 0;
    std::vector<V> x;
    std::vector<V> c;
    std::vector<V> r;
    std::vector<V> t;

    [[nodiscard]] std::size_t offset(std::size_t pi, std::size_t qi) const { return (pi * nq + qi) * r_len; }
    [[nodiscard]] std::uint64_t cells() const { return x.size() + c.size() + r.size() + t.size(); }
    [[nodiscard]] bool empty() const { return x.empty(); }
};

struct Stored {
    std::size_t nq = 0;
    std::size_t r_len = 0;
    std::size_t base = 0;
};

template <class Policy>
struct DpOutcome {
    SolveStatus status = SolveStatus::no_solution;
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> a_indices;
    std::vector<std::size_t> b_indices;
    SolveStats stats;
};

template <class Policy>
class ConfigurationDp {
public:
    using V = typename Policy::Value;

    ConfigurationDp(const Chain& a, const Chain& b, const CpsParams& params, const DpOptions& options,
                    const Policy& policy)
        : a_(a), b_(b), params_(params), options_(options), policy_(policy),
          la_(make_leash(a, params.delta1)), lb_(make_leash(b, params.delta2)),
          m_(a.size()), n_(b.size()), cross_(m_ * n_, 0)
    {
        for (std::size_t p = 0; p < m_; ++p) {
            for (std::size_t q = 0; q < n_; ++q) {
                cross_[p * n_ + q] = euclidean_distance(a[p], b[q]) <= params.delta3;
            }
        }
    }

    DpOutcome<Policy> run()
    {
        const auto start = Clock::now();
        DpOutcome<Policy> out;

        if (options_.reconstruct) {
            std::uint64_t per_a = 0;
            std::uint64_t per_b = 0;
            for (std::size_t i = 0; i < m_; ++i) per_a += la_.near[i].size() * policy_.r_len(la_.near[i].back());
            for (std::size_t j = 0; j < n_; ++j) per_b += lb_.near[j].size();
            const std::uint64_t bytes = per_a * per_b * sizeof(V);
            if (bytes > options_.memory_budget) {
                throw MemoryBudgetExceeded(fmt::format(
                    "reconstruction needs {} bytes, budget is {}", bytes, options_.memory_budget));
            }
            stored_.resize(m_ * n_);
            arena_.reserve(per_a * per_b);
        }

        std::vector<Cell<V>> prev_row(n_);
        std::vector<Cell<V>> cur_row(n_);
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                if (options_.deadline && Clock::now() > *options_.deadline) {
                    out.status = SolveStatus::timed_out;
                    out.stats = stats_;
                    out.stats.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
                    return out;
                }
                if (i > 0) rebuild_tables(prev_row[j]);
                const Cell<V>* up = i > 0 ? &prev_row[j] : nullptr;
                const Cell<V>* left = j > 0 ? &cur_row[j - 1] : nullptr;
                const Cell<V>* diag = i > 0 && j > 0 ? &prev_row[j - 1] : nullptr;
                cur_row[j] = compute_cell(i, j, up, left, diag);
                add_live(cur_row[j].cells());
                if (options_.on_layer) report_layer(i, j, cur_row[j]);
                if (diag != nullptr) retire(prev_row[j - 1], i - 1, j - 1);
                // Frontier layers keep X only until the next row reads them.
                if (j > 0) drop_tables(cur_row[j - 1]);
            }
            drop_tables(cur_row[n_ - 1]);
            if (i > 0) retire(prev_row[n_ - 1], i - 1, n_ - 1);
            std::swap(prev_row, cur_row);
        }

        // prev_row now holds the last row.
        const auto& last = prev_row[n_ - 1];
        const auto& pl = la_.near[m_ - 1];
        const auto& ql = lb_.near[n_ - 1];
        std::size_t best_pi = 0;
        std::size_t best_qi = 0;
        std::size_t best_r = 0;
        for (std::size_t pi = 0; pi < pl.size(); ++pi) {
            for (std::size_t qi = 0; qi < ql.size(); ++qi) {
                if (!is_final(pl[pi], ql[qi])) continue;
                const V* x = &last.x[last.offset(pi, qi)];
                for (std::size_t r = 0; r < last.r_len; ++r) {
                    if (x[r] >= policy_.inf) continue;
                    const double value = std::max(policy_.a_amount(r), static_cast<double>(x[r]));
                    if (value < out.best) {
                        out.best = value;
                        best_pi = pi;
                        best_qi = qi;
                        best_r = r;
                    }
                }
            }
        }
        out.status = out.best < std::numeric_limits<double>::infinity() ? SolveStatus::optimal
                                                                         : SolveStatus::no_solution;

        if (out.status == SolveStatus::optimal && options_.reconstruct) {
            for (std::size_t j = 0; j < n_; ++j) store(prev_row[j], m_ - 1, j);
            trace_back(m_ - 1, n_ - 1, best_pi, best_qi, best_r, out);
        }
        out.stats = stats_;
        out.stats.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
        return out;
    }

private:
    [[nodiscard]] bool is_initial(std::size_t p, std::size_t q) const
    {
        return params_.endpoint_mode == EndpointMode::free_dogs || (p == 0 && q == 0);
    }

    [[nodiscard]] bool is_final(std::size_t p, std::size_t q) const
    {
        return params_.endpoint_mode == EndpointMode::free_dogs || (p == m_ - 1 && q == n_ - 1);
    }

    void add_live(std::uint64_t cells)
    {
        live_ += cells;
        stats_.peak_cells = std::max(stats_.peak_cells, live_);
    }

    // The layer at (i, j) has no remaining readers in the sweep.
    void retire(Cell<V>& cell, std::size_t i, std::size_t j)
    {
        if (cell.empty()) return;
        drop_tables(cell);
        if (options_.reconstruct) {
            store(cell, i, j);
        } else {
            live_ -= cell.x.size();
        }
        cell = Cell<V>{};
    }

    // Retired X layers are packed into one arena; scattered blocks fragmented the heap badly.
    void store(const Cell<V>& cell, std::size_t i, std::size_t j)
    {
        stored_[i * n_ + j] = Stored{cell.nq, cell.r_len, arena_.size()};
        arena_.insert(arena_.end(), cell.x.begin(), cell.x.end());
    }

    void drop_tables(Cell<V>& cell)
    {
        live_ -= cell.c.size() + cell.r.size() + cell.t.size();
        cell.c = {};
        cell.r = {};
        cell.t = {};
    }

    void rebuild_tables(Cell<V>& cell)
    {
        if (!cell.c.empty() || cell.empty()) return;
        const auto total = cell.x.size();
        cell.c.resize(total);
        cell.r.resize(total);
        cell.t.resize(total);
        add_live(3 * total);
        for (std::size_t pi = 0; pi < cell.np; ++pi) {
            for (std::size_t qi = 0; qi < cell.nq; ++qi) update_tables(cell, pi, qi);
        }
    }

    // C, R and T at (pi, qi) from X there and the entries already filled before it.
    void update_tables(Cell<V>& cell, std::size_t pi, std::size_t qi) const
    {
        const auto off = cell.offset(pi, qi);
        const V* x = &cell.x[off];
        V* c = &cell.c[off];
        V* r = &cell.r[off];
        V* t = &cell.t[off];
        const V* c_prev = pi > 0 ? &cell.c[cell.offset(pi - 1, qi)] : nullptr;
        const V* r_prev = qi > 0 ? &cell.r[cell.offset(pi, qi - 1)] : nullptr;
        const V* t_up = pi > 0 ? &cell.t[cell.offset(pi - 1, qi)] : nullptr;
        const V* t_left = qi > 0 ? &cell.t[cell.offset(pi, qi - 1)] : nullptr;
        for (std::size_t k = 0; k < cell.r_len; ++k) {
            c[k] = c_prev ? std::min(c_prev[k], x[k]) : x[k];
            r[k] = r_prev ? std::min(r_prev[k], x[k]) : x[k];
            V tv = x[k];
            if (t_up) tv = std::min(tv, t_up[k]);
            if (t_left) tv = std::min(tv, t_left[k]);
            t[k] = tv;
        }
    }

    struct Pred {
        const Cell<V>* cell;
        const std::int32_t* p_below;
        const std::int32_t* p_equal;
        const std::int32_t* q_below;
        const std::int32_t* q_equal;
    };

    Cell<V> compute_cell(std::size_t i, std::size_t j, const Cell<V>* up, const Cell<V>* left,
                         const Cell<V>* diag)
    {
        const auto& pl = la_.near[i];
        const auto& ql = lb_.near[j];
        Cell<V> cell;
        cell.np = pl.size();
        cell.nq = ql.size();
        cell.r_len = policy_.r_len(pl.back());
        const auto total = cell.np * cell.nq * cell.r_len;
        cell.x.assign(total, policy_.inf);
        cell.c.resize(total);
        cell.r.resize(total);
        cell.t.resize(total);

        Pred preds[3];
        std::size_t n_preds = 0;
        if (diag) {
            preds[n_preds++] = {diag, la_.below_prev[i].data(), la_.equal_prev[i].data(), lb_.below_prev[j].data(),
                                lb_.equal_prev[j].data()};
        }
        if (up) {
            preds[n_preds++] = {up, la_.below_prev[i].data(), la_.equal_prev[i].data(), lb_.below_self.data(),
                                lb_.equal_self.data()};
        }
        if (left) {
            preds[n_preds++] = {left, la_.below_self.data(), la_.equal_self.data(), lb_.below_prev[j].data(),
                                lb_.equal_prev[j].data()};
        }

        const auto len = cell.r_len;
        for (std::size_t pi = 0; pi < cell.np; ++pi) {
            const std::size_t p = pl[pi];
            for (std::size_t qi = 0; qi < cell.nq; ++qi) {
                const std::size_t q = ql[qi];
                const auto off = cell.offset(pi, qi);
                V* x = &cell.x[off];
                if (cross_[p * n_ + q]) {
                    ++stats_.possible_configurations;
                    if (i == 0 && j == 0 && is_initial(p, q)) {
                        for (std::size_t r = 0; r < len; ++r) x[r] = policy_.init(p, q, r);
                    }
                    for (std::size_t k = 0; k < n_preds; ++k) {
                        const auto& z = preds[k];
                        const auto& zc = *z.cell;
                        const auto pz = z.p_below[pi];
                        const auto pe = z.p_equal[pi];
                        const auto qz = z.q_below[qi];
                        const auto qe = z.q_equal[qi];
                        if (pz >= 0 && qe >= 0) {
                            policy_.relax_move(x, &zc.c[zc.offset(pz, qe)], zc.r_len, len, false, p, q);
                        }
                        if (pe >= 0 && qz >= 0) {
                            policy_.relax_stay(x, &zc.r[zc.offset(pe, qz)], zc.r_len, len, true, q);
                        }
                        if (pz >= 0 && qz >= 0) {
                            policy_.relax_move(x, &zc.t[zc.offset(pz, qz)], zc.r_len, len, true, p, q);
                        }
                        if (pe >= 0 && qe >= 0) {
                            policy_.relax_stay(x, &zc.x[zc.offset(pe, qe)], zc.r_len, len, false, q);
                        }
                    }
                    // Same man/woman positions: only the dogs moved.
                    if (pi > 0) policy_.relax_move(x, &cell.c[cell.offset(pi - 1, qi)], len, len, false, p, q);
                    if (qi > 0) policy_.relax_stay(x, &cell.r[cell.offset(pi, qi - 1)], len, len, true, q);
                    if (pi > 0 && qi > 0) {
                        policy_.relax_move(x, &cell.t[cell.offset(pi - 1, qi - 1)], len, len, true, p, q);
                    }
                }

                update_tables(cell, pi, qi);
            }
        }
        return cell;
    }

    void report_layer(std::size_t i, std::size_t j, const Cell<V>& cell) const
    {
        if constexpr (std::is_same_v<V, std::uint16_t>) {
            LayerView<V> view;
            view.i = i;
            view.j = j;
            view.a_dogs = la_.near[i];
            view.b_dogs = lb_.near[j];
            view.r_len = cell.r_len;
            view.infinity = policy_.inf;
            view.x = cell.x;
            view.c = cell.c;
            view.r = cell.r;
            view.t = cell.t;
            options_.on_layer(view);
        }
    }

    [[nodiscard]] V read(const Stored& cell, std::size_t pi, std::size_t qi, std::size_t r) const
    {
        return arena_[cell.base + (pi * cell.nq + qi) * cell.r_len + std::min(r, cell.r_len - 1)];
    }

    // Walks predecessor links backwards from the optimal final configuration.
    // Candidate order: man and woman both back, man back, woman back, neither;
    // within a layer, smaller A dog first, then smaller B dog.
    void trace_back(std::size_t i, std::size_t j, std::size_t pi, std::size_t qi, std::size_t r,
                    DpOutcome<Policy>& out) const
    {
        std::vector<std::size_t> a_path;
        std::vector<std::size_t> b_path;
        while (true) {
            const auto& cell = stored_[i * n_ + j];
            const std::size_t p = la_.near[i][pi];
            const std::size_t q = lb_.near[j][qi];
            a_path.push_back(p);
            b_path.push_back(q);
            r = std::min(r, cell.r_len - 1);
            const V value = read(cell, pi, qi, r);

            if (i == 0 && j == 0 && is_initial(p, q) && policy_.init(p, q, r) == value) {
                break;
            }

            bool found = false;
            const std::pair<std::size_t, std::size_t> steps[4] = {{1, 1}, {1, 0}, {0, 1}, {0, 0}};
            for (const auto& [di, dj] : steps) {
                if (di > i || dj > j) continue;
                const std::size_t zi = i - di;
                const std::size_t zj = j - dj;
                const auto& zcell = stored_[zi * n_ + zj];
                const auto& zp = la_.near[zi];
                const auto& zq = lb_.near[zj];
                for (std::size_t zpi = 0; zpi < zp.size() && zp[zpi] <= p && !found; ++zpi) {
                    for (std::size_t zqi = 0; zqi < zq.size() && zq[zqi] <= q; ++zqi) {
                        const bool moved_a = zp[zpi] < p;
                        const bool moved_b = zq[zqi] < q;
                        if (di == 0 && dj == 0 && !moved_a && !moved_b) continue;
                        std::int64_t zr = static_cast<std::int64_t>(r);
                        if (moved_a) zr = policy_.prev_r(p, r);
                        if (zr < 0) continue;
                        V cand = read(zcell, zpi, zqi, static_cast<std::size_t>(zr));
                        if (cand >= policy_.inf) continue;
                        if (moved_b) cand = policy_.add_b(cand, q);
                        if (cand == value) {
                            i = zi;
                            j = zj;
                            pi = zpi;
                            qi = zqi;
                            r = static_cast<std::size_t>(zr);
                            found = true;
                            break;
                        }
                    }
                }
                if (found) break;
            }
            if (!found) throw std::logic_error("dynamic program trace-back lost its path");
        }
        std::reverse(a_path.begin(), a_path.end());
        std::reverse(b_path.begin(), b_path.end());
        a_path.erase(std::unique(a_path.begin(), a_path.end()), a_path.end());
        b_path.erase(std::unique(b_path.begin(), b_path.end()), b_path.end());
        out.a_indices = std::move(a_path);
        out.b_indices = std::move(b_path);
    }

    const Chain& a_;
    const Chain& b_;
    const CpsParams& params_;
    const DpOptions& options_;
    const Policy& policy_;
    Leash la_;
    Leash lb_;
    std::size_t m_;
    std::size_t n_;
    std::vector<char> cross_;
    std::vector<Stored> stored_;
    std::vector<V> arena_;
    std::uint64_t live_ = 0;
    SolveStats stats_;
};

CpsParams swapped(const CpsParams& params)
{
    CpsParams s = params;
    std::swap(s.delta1, s.delta2);
    return s;
}

void require_same_dim(const Chain& a, const Chain& b)
{
    if (a.dim() != b.dim()) throw InvalidArgument("chains must share one dimension");
}

}  // namespace

CpsSolution cps3f_min_dp(const Chain& a, const Chain& b, const CpsParams& params, const DpOptions& options)
{
    params.validate();
    require_same_dim(a, b);
    if (a.size() + b.size() + 1 >= std::numeric_limits<std::uint16_t>::max()) {
        throw InvalidArgument("chains too long for 16-bit hop counts");
    }

    // The r dimension runs over the shorter chain.
    const bool swap = b.size() < a.size();
    const Chain& ca = swap ? b : a;
    const Chain& cb = swap ? a : b;
    const CpsParams cp = swap ? swapped(params) : params;

    HopPolicy policy;
    policy.inf = static_cast<std::uint16_t>(a.size() + b.size() + 1);
    policy.r_limit = ca.size();
    bool capped = false;
    if (params.r_cap && *params.r_cap < ca.size()) {
        policy.r_limit = *params.r_cap;
        capped = true;
    }

    ConfigurationDp<HopPolicy> dp(ca, cb, cp, options, policy);
    auto outcome = dp.run();

    CpsSolution sol;
    sol.status = outcome.status;
    sol.stats = outcome.stats;
    if (outcome.status == SolveStatus::optimal) {
        sol.k_star = static_cast<std::size_t>(outcome.best);
        sol.a_indices = std::move(outcome.a_indices);
        sol.b_indices = std::move(outcome.b_indices);
        if (swap) std::swap(sol.a_indices, sol.b_indices);
    }
    // Every walk using more than r_cap A' vertices costs more than r_cap, so
    // an answer within the cap is optimal; anything else is unproven.
    if (capped && outcome.status != SolveStatus::timed_out &&
        (outcome.status == SolveStatus::no_solution || sol.k_star > *params.r_cap)) {
        sol.status = SolveStatus::r_cap_inconclusive;
        sol.a_indices.clear();
        sol.b_indices.clear();
    }
    return sol;
}

bool cps3f_decision(const Chain& a, const Chain& b, std::size_t k, const CpsParams& params)
{
    if (k == 0) throw InvalidArgument("k must be at least 1");
    CpsParams uncapped = params;
    uncapped.r_cap.reset();
    const auto sol = cps3f_min_dp(a, b, uncapped);
    return sol.solved() && sol.k_star <= k;
}

WeightedSolution wcps3f_min(const Chain& a, const Chain& b, const CpsParams& params, const DpOptions& options)
{
    params.validate();
    require_same_dim(a, b);
    if (params.r_cap) throw InvalidArgument("r_cap is not supported by the weighted solver");

    auto fa = obtainable_weights(a);
    auto fb = obtainable_weights(b);
    // Index the value arrays by the chain with fewer obtainable sums.
    const bool swap = fb.size() < fa.size();
    const Chain& ca = swap ? b : a;
    const Chain& cb = swap ? a : b;
    const CpsParams cp = swap ? swapped(params) : params;

    WeightPolicy policy(ca, cb, swap ? std::move(fb) : std::move(fa));
    ConfigurationDp<WeightPolicy> dp(ca, cb, cp, options, policy);
    auto outcome = dp.run();

    WeightedSolution ws;
    ws.solution.status = outcome.status;
    ws.solution.stats = outcome.stats;
    if (outcome.status == SolveStatus::optimal) {
        ws.k_star_weight = outcome.best;
        ws.solution.a_indices = std::move(outcome.a_indices);
        ws.solution.b_indices = std::move(outcome.b_indices);
        if (swap) std::swap(ws.solution.a_indices, ws.solution.b_indices);
        ws.solution.k_star = std::max(ws.solution.a_indices.size(), ws.solution.b_indices.size());
    }
    return ws;
}

bool wcps3f_decision(const Chain& a, const Chain& b, double k, const CpsParams& params)
{
    if (!(k > 0.0)) throw InvalidArgument("weight budget must be positive");
    const auto ws = wcps3f_min(a, b, params);
    return ws.solution.solved() && ws.k_star_weight <= k;
}

}  // namespace cps
