// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
// `--extended` adds the long protein rows (needs network or a warm PDB cache).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <optional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "cps/geometry.hpp"
#include "cps/one_sided.hpp"
#include "cps/oracle.hpp"
#include "cps/pdb.hpp"
#include "cps/solver.hpp"

using namespace cps;

namespace {

// Peak live DP cells allowed in value-only mode, as a multiple of m*m*n.
constexpr double kMemoryConstant = 4.0;
constexpr std::uint64_t kSeed = 20240917;

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    std::string name;
    std::function<Outcome()> run;
};

Chain random_chain(std::mt19937_64& rng, std::size_t len)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Point> pts;
    for (std::size_t k = 0; k < len; ++k) pts.emplace_back(u(rng), u(rng));
    return Chain(std::move(pts));
}

std::vector<double> pooled_distances(const Chain& a, const Chain& b)
{
    std::vector<double> d;
    for (const auto* x : {&a, &b}) {
        for (std::size_t i = 0; i < x->size(); ++i)
            for (std::size_t k = i + 1; k < x->size(); ++k) d.push_back(euclidean_distance((*x)[i], (*x)[k]));
    }
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) d.push_back(euclidean_distance(a[i], b[k]));
    d.push_back(0.0);
    std::sort(d.begin(), d.end());
    return d;
}

double pick(std::mt19937_64& rng, const std::vector<double>& d)
{
    return d[std::uniform_int_distribution<std::size_t>(0, d.size() - 1)(rng)];
}

bool witness_valid(const Chain& a, const Chain& b, const CpsParams& p, const CpsSolution& s)
{
    if (s.a_indices.empty() || s.b_indices.empty()) return false;
    if (std::max(s.a_indices.size(), s.b_indices.size()) != s.k_star) return false;
    if (!verify_simplification(a, s.a_indices, p.delta1)) return false;
    if (!verify_simplification(b, s.b_indices, p.delta2)) return false;
    if (p.endpoint_mode == EndpointMode::anchored &&
        (s.a_indices.front() != 0 || s.a_indices.back() != a.size() - 1 || s.b_indices.front() != 0 ||
         s.b_indices.back() != b.size() - 1)) {
        return false;
    }
    return discrete_frechet(a.subsequence(s.a_indices), b.subsequence(s.b_indices)).value <= p.delta3;
}

struct OracleCase {
    Chain a;
    Chain b;
    CpsParams params;
    CpsSolution witness;
};

// Instances of the oracle-equivalence suite are kept for the witness check.
std::vector<OracleCase> g_oracle_cases;

Outcome oracle_equivalence()
{
    std::mt19937_64 rng(kSeed);
    std::uniform_int_distribution<std::size_t> len(2, 7);
    std::size_t mismatches = 0;
    std::size_t solved = 0;
    for (int t = 0; t < 300; ++t) {
        const auto a = random_chain(rng, len(rng));
        const auto b = random_chain(rng, len(rng));
        const auto d = pooled_distances(a, b);
        CpsParams p;
        p.delta1 = pick(rng, d);
        p.delta2 = pick(rng, d);
        p.delta3 = pick(rng, d);
        for (auto mode : {EndpointMode::anchored, EndpointMode::free_dogs}) {
            p.endpoint_mode = mode;
            const auto brute = oracle::brute_cps3f(a, b, p);
            const auto graph = cps3f_min_graph(a, b, p);
            DpOptions opts;
            opts.reconstruct = true;
            const auto dp = cps3f_min_dp(a, b, p, opts);
            const auto dp_value = cps3f_min_dp(a, b, p);
            const auto same = [&](const CpsSolution& s) {
                return s.solved() == brute.has_value() && (!brute || s.k_star == *brute);
            };
            if (!same(graph) || !same(dp) || !same(dp_value)) ++mismatches;
            if (dp.solved()) {
                ++solved;
                g_oracle_cases.push_back({a, b, p, dp});
            }
        }
    }
    return {mismatches == 0, fmt::format("600 solves (300 instances x 2 modes), {} solvable, {} mismatches", solved,
                                         mismatches)};
}

Outcome frechet_correctness()
{
    std::mt19937_64 rng(kSeed + 1);
    std::uniform_int_distribution<std::size_t> len(1, 7);
    std::size_t bad = 0;
    for (int t = 0; t < 200; ++t) {
        const auto a = random_chain(rng, len(rng));
        const auto b = random_chain(rng, len(rng));
        const double v = discrete_frechet(a, b).value;
        if (v != oracle::brute_frechet(a, b)) ++bad;
        if (v != discrete_frechet(b, a).value) ++bad;
        if (discrete_frechet(a, a).value != 0.0) ++bad;
    }
    return {bad == 0, fmt::format("200 pairs, {} violations", bad)};
}

Outcome reduction_iff()
{
    std::vector<std::vector<unsigned>> sets;
    std::function<void(std::vector<unsigned>&, unsigned, std::size_t)> all = [&](std::vector<unsigned>& cur,
                                                                                 unsigned from, std::size_t size) {
        if (cur.size() == size) {
            sets.push_back(cur);
            return;
        }
        for (unsigned v = from; v <= 10; ++v) {
            cur.push_back(v);
            all(cur, v, size);
            cur.pop_back();
        }
    };
    for (std::size_t size = 1; size <= 4; ++size) {
        std::vector<unsigned> cur;
        all(cur, 1, size);
    }
    const auto exhaustive = sets.size();
    std::mt19937_64 rng(kSeed + 2);
    std::uniform_int_distribution<std::size_t> size(5, 7);
    std::uniform_int_distribution<unsigned> elem(1, 10);
    for (int t = 0; t < 500; ++t) {
        std::vector<unsigned> s(size(rng));
        for (auto& x : s) x = elem(rng);
        sets.push_back(std::move(s));
    }
    std::size_t bad = 0;
    std::size_t yes = 0;
    for (const auto& s : sets) {
        const bool truth = oracle::partition_brute(s);
        yes += truth;
        for (bool positive : {false, true}) {
            const auto inst = oracle::make_reduction_instance(s, positive);
            if (wcps3f_decision(inst.a, inst.b, inst.budget, inst.params) != truth) ++bad;
        }
    }
    return {bad == 0, fmt::format("{} exhaustive (|S|<=4) + 500 sampled (|S| in 5..7) sets, {} partitionable, "
                                  "both weight variants, {} disagreements",
                                  exhaustive, yes, bad)};
}

Outcome weighted_consistency()
{
    std::mt19937_64 rng(kSeed + 3);
    std::uniform_int_distribution<std::size_t> len(2, 8);
    std::size_t bad = 0;
    for (int t = 0; t < 100; ++t) {
        const auto a = random_chain(rng, len(rng));
        const auto b = random_chain(rng, len(rng));
        const auto d = pooled_distances(a, b);
        CpsParams p;
        p.delta1 = pick(rng, d);
        p.delta2 = pick(rng, d);
        p.delta3 = pick(rng, d);
        p.endpoint_mode = t % 2 ? EndpointMode::anchored : EndpointMode::free_dogs;
        const auto w = wcps3f_min(a, b, p);
        const auto u = cps3f_min_dp(a, b, p);
        if (w.solution.status != u.status) ++bad;
        else if (u.solved() && w.k_star_weight != static_cast<double>(u.k_star)) ++bad;
    }
    return {bad == 0, fmt::format("100 unit-weight instances, {} mismatches", bad)};
}

std::size_t g_one_sided_witnesses = 0;
std::size_t g_one_sided_bad_witnesses = 0;

Outcome one_sided_suite()
{
    std::mt19937_64 rng(kSeed + 4);
    std::uniform_int_distribution<std::size_t> len(1, 8);
    std::size_t bad = 0;
    for (int t = 0; t < 200; ++t) {
        const auto a = random_chain(rng, len(rng));
        const auto b = random_chain(rng, len(rng));
        const auto d = pooled_distances(a, b);
        const double d1 = pick(rng, d);
        const double d3 = pick(rng, d);

        const auto os = one_sided_cps3f_min(a, b, d1, d3);
        const auto os_b = oracle::brute_one_sided(a, b, d1, d3);
        if (os.found != os_b.has_value() || (os.found && os.length != *os_b)) ++bad;
        if (os.found) {
            ++g_one_sided_witnesses;
            if (os.a_indices.size() != os.length || !verify_simplification(a, os.a_indices, d1) ||
                discrete_frechet(a.subsequence(os.a_indices), b).value > d3) {
                ++g_one_sided_bad_witnesses;
            }
        }

        const auto mk = simplify_min_k(a, b, d3);
        const auto mk_b = oracle::brute_min_k(a, b, d3);
        if (mk.found != mk_b.has_value() || (mk.found && mk.length != *mk_b)) ++bad;
        if (mk.found) {
            ++g_one_sided_witnesses;
            if (mk.a_indices.size() != mk.length || discrete_frechet(a.subsequence(mk.a_indices), b).value > d3) {
                ++g_one_sided_bad_witnesses;
            }
        }

        const std::size_t k = 1 + std::uniform_int_distribution<std::size_t>(0, 3)(rng);
        const auto md = simplify_min_delta(a, b, k);
        if (md.delta != oracle::brute_min_delta(a, b, k)) ++bad;
        const auto cross = cross_distances(a, b);
        const auto it = std::lower_bound(cross.begin(), cross.end(), md.delta);
        if (it == cross.end() || *it != md.delta) {
            ++bad;
            continue;
        }
        const auto at = simplify_min_k(a, b, md.delta);
        if (!at.found || at.length > k) ++bad;
        if (it != cross.begin()) {
            const auto below = simplify_min_k(a, b, *(it - 1));
            if (below.found && below.length <= k) ++bad;
        }
        ++g_one_sided_witnesses;
        if (md.a_indices.empty() || md.a_indices.size() > k ||
            discrete_frechet(a.subsequence(md.a_indices), b).value != md.delta) {
            ++g_one_sided_bad_witnesses;
        }
    }
    return {bad == 0, fmt::format("200 instances x 3 problems, {} mismatches", bad)};
}

Outcome witness_validity()
{
    std::size_t bad = 0;
    for (const auto& c : g_oracle_cases) bad += !witness_valid(c.a, c.b, c.params, c.witness);
    const bool ran = !g_oracle_cases.empty() && g_one_sided_witnesses > 0;
    return {ran && bad == 0 && g_one_sided_bad_witnesses == 0,
            fmt::format("{} two-sided witnesses ({} invalid), {} one-sided witnesses ({} invalid)",
                        g_oracle_cases.size(), bad, g_one_sided_witnesses, g_one_sided_bad_witnesses)};
}

Outcome monotonicity()
{
    std::mt19937_64 rng(kSeed + 5);
    std::uniform_int_distribution<std::size_t> len(3, 9);
    std::size_t bad = 0;
    for (int t = 0; t < 50; ++t) {
        const auto a = random_chain(rng, len(rng));
        const auto b = random_chain(rng, len(rng));
        const auto d = pooled_distances(a, b);
        CpsParams base;
        base.delta1 = pick(rng, d);
        base.delta2 = pick(rng, d);
        base.delta3 = pick(rng, d);
        for (int which = 0; which < 3; ++which) {
            std::vector<double> grid(5);
            for (auto& g : grid) g = pick(rng, d);
            std::sort(grid.begin(), grid.end());
            std::size_t last = SIZE_MAX;
            for (double g : grid) {
                auto p = base;
                (which == 0 ? p.delta1 : which == 1 ? p.delta2 : p.delta3) = g;
                const auto s = cps3f_min_dp(a, b, p);
                const std::size_t k = s.solved() ? s.k_star : SIZE_MAX;
                if (k > last) ++bad;
                last = k;
            }
        }
    }
    return {bad == 0, fmt::format("50 instances x 3 deltas x 5-point grid, {} increases", bad)};
}

// Protein-like walk: 3.8 unit steps with bounded turning.
Chain backbone_walk(std::mt19937_64& rng, std::size_t len)
{
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<Point> pts;
    double x = 0, y = 0, z = 0;
    double dx = 1, dy = 0, dz = 0;
    for (std::size_t k = 0; k < len; ++k) {
        pts.emplace_back(x, y, z);
        dx += 0.6 * n(rng);
        dy += 0.6 * n(rng);
        dz += 0.6 * n(rng);
        const double s = std::sqrt(dx * dx + dy * dy + dz * dz);
        dx /= s;
        dy /= s;
        dz /= s;
        x += 3.8 * dx;
        y += 3.8 * dy;
        z += 3.8 * dz;
    }
    return Chain(std::move(pts));
}

Outcome memory_contract()
{
    constexpr std::size_t m = 150;
    constexpr std::size_t n = 150;
    std::mt19937_64 rng(kSeed + 6);
    const auto a = backbone_walk(rng, m);
    std::vector<Point> pb;
    std::normal_distribution<double> jitter(0.0, 0.8);
    for (const auto& p : a.points()) pb.emplace_back(p[0] + jitter(rng), p[1] + jitter(rng), p[2] + jitter(rng));
    const Chain b(std::move(pb));
    CpsParams p;
    p.delta1 = 12;
    p.delta2 = 12;
    p.delta3 = 3;
    const auto sol = cps3f_min_dp(a, b, p);
    const double bound = kMemoryConstant * static_cast<double>(m * m * n);
    const double full = static_cast<double>(m * m * n * n) * static_cast<double>(std::min(m, n));
    const bool ok = sol.solved() && static_cast<double>(sol.stats.peak_cells) <= bound;
    return {ok, fmt::format("m=n=150, k*={}, peak live cells {} <= {}*m^2*n = {:.0f} (full table m^2*n^2*min(m,n) "
                            "= {:.3g}, {:.1f} s)",
                            sol.k_star, sol.stats.peak_cells, kMemoryConstant, bound, full,
                            sol.stats.elapsed_seconds)};
}

struct ProteinRow {
    const char* b_id;
    std::optional<char> b_chain;
    std::size_t len_b;
    double d1, d2, d3;
    std::size_t expected;
};

Outcome protein_row(const ProteinRow& row)
{
    try {
        io::PdbFetcher fetcher(io::default_cache_root());
        io::PdbSelection sa;
        sa.chain_id = 'A';
        const auto a = io::parse_pdb(fetcher.fetch("107j"), sa).chain;
        io::PdbSelection sb;
        sb.chain_id = row.b_chain;
        const auto b = io::parse_pdb(fetcher.fetch(row.b_id), sb).chain;
        if (a.size() != 325 || b.size() != row.len_b) {
            return {false, fmt::format("length gate: parsed {}/{} expected 325/{}", a.size(), b.size(), row.len_b)};
        }
        CpsParams p;
        p.delta1 = row.d1;
        p.delta2 = row.d2;
        p.delta3 = row.d3;
        const auto sol = cps3f_min_dp(a, b, p);
        return {sol.solved() && sol.k_star == row.expected,
                fmt::format("k*={} expected {} ({:.0f} s)", sol.solved() ? sol.k_star : 0, row.expected,
                            sol.stats.elapsed_seconds)};
    } catch (const std::exception& e) {
        return {false, fmt::format("could not load chains: {}", e.what())};
    }
}

}  // namespace

int main(int argc, char** argv)
{
    const bool extended = argc > 1 && std::strcmp(argv[1], "--extended") == 0;

    std::vector<Criterion> criteria = {
        {"oracle_equivalence", oracle_equivalence},
        {"frechet_correctness", frechet_correctness},
        {"reduction_iff", reduction_iff},
        {"weighted_unit_consistency", weighted_consistency},
        {"one_sided_suite", one_sided_suite},
        {"witness_validity", witness_validity},
        {"monotonicity", monotonicity},
        {"memory_contract", memory_contract},
    };
    if (extended) {
        criteria.push_back({"protein_table2_1hfj.c", [] { return protein_row({"1hfj", 'C', 325, 12, 12, 1, 15}); }});
        criteria.push_back({"protein_table1_1hfj.c", [] { return protein_row({"1hfj", 'C', 325, 4, 4, 1, 83}); }});
        criteria.push_back({"protein_table3_2fep.a", [] { return protein_row({"2fep", 'A', 273, 12, 12, 10, 6}); }});
    }

    bool all = true;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, fmt::format("exception: {}", e.what())};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << fmt::format("{} {} ({}; {:.1f} s)", o.pass ? "PASS" : "FAIL", c.name, o.detail, secs)
                  << std::endl;
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
