#include "cps/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>

#include <fmt/format.h>

namespace cps::oracle {
namespace {

void guard(const Chain& a, const Chain& b)
{
    if (a.size() > kMaxChainLength || b.size() > kMaxChainLength) {
        throw SizeGuardExceeded(fmt::format("exhaustive solver limited to chains of length {}, got {} and {}",
                                            kMaxChainLength, a.size(), b.size()));
    }
}

std::vector<std::size_t> mask_indices(std::uint32_t mask)
{
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; mask != 0; ++k, mask >>= 1) {
        if (mask & 1u) idx.push_back(k);
    }
    return idx;
}

// Nonempty subsequence masks of `c`, ordered by size.
std::vector<std::uint32_t> masks_by_size(std::size_t len)
{
    std::vector<std::uint32_t> masks;
    for (std::uint32_t mask = 1; mask < (1u << len); ++mask) masks.push_back(mask);
    std::stable_sort(masks.begin(), masks.end(),
                     [](std::uint32_t x, std::uint32_t y) { return std::popcount(x) < std::popcount(y); });
    return masks;
}

struct Candidate {
    std::uint32_t mask;
    Chain chain;
};

// Simplifications of `c` within `delta` of it, respecting the endpoint mode.
std::vector<Candidate> simplifications(const Chain& c, double delta, EndpointMode mode)
{
    std::vector<Candidate> out;
    const std::uint32_t ends = (1u << 0) | (1u << (c.size() - 1));
    for (auto mask : masks_by_size(c.size())) {
        if (mode == EndpointMode::anchored && (mask & ends) != ends) continue;
        const auto idx = mask_indices(mask);
        auto sub = c.subsequence(idx);
        if (frechet_decision(c, sub, delta)) out.push_back({mask, std::move(sub)});
    }
    return out;
}

void couplings(const Chain& a, const Chain& b, std::size_t i, std::size_t j, double sofar, double& best)
{
    sofar = std::max(sofar, euclidean_distance(a[i], b[j]));
    if (i == a.size() - 1 && j == b.size() - 1) {
        best = std::min(best, sofar);
        return;
    }
    if (i + 1 < a.size() && j + 1 < b.size()) couplings(a, b, i + 1, j + 1, sofar, best);
    if (i + 1 < a.size()) couplings(a, b, i + 1, j, sofar, best);
    if (j + 1 < b.size()) couplings(a, b, i, j + 1, sofar, best);
}

}  // namespace

double brute_frechet(const Chain& a, const Chain& b)
{
    guard(a, b);
    if (a.dim() != b.dim()) throw InvalidArgument("chains must share one dimension");
    double best = std::numeric_limits<double>::infinity();
    couplings(a, b, 0, 0, 0.0, best);
    return best;
}

std::optional<std::size_t> brute_cps3f(const Chain& a, const Chain& b, const CpsParams& params)
{
    guard(a, b);
    params.validate();
    const auto sa = simplifications(a, params.delta1, params.endpoint_mode);
    const auto sb = simplifications(b, params.delta2, params.endpoint_mode);
    const std::size_t top = std::max(a.size(), b.size());
    for (std::size_t k = 1; k <= top; ++k) {
        for (const auto& ca : sa) {
            const auto ka = static_cast<std::size_t>(std::popcount(ca.mask));
            if (ka > k) break;
            for (const auto& cb : sb) {
                const auto kb = static_cast<std::size_t>(std::popcount(cb.mask));
                if (kb > k) break;
                if (std::max(ka, kb) != k) continue;
                if (frechet_decision(ca.chain, cb.chain, params.delta3)) return k;
            }
        }
    }
    return std::nullopt;
}

std::optional<double> brute_wcps3f(const Chain& a, const Chain& b, const CpsParams& params)
{
    guard(a, b);
    params.validate();
    const auto sa = simplifications(a, params.delta1, params.endpoint_mode);
    const auto sb = simplifications(b, params.delta2, params.endpoint_mode);
    std::optional<double> best;
    for (const auto& ca : sa) {
        const double wa = a.weight_of(mask_indices(ca.mask));
        for (const auto& cb : sb) {
            const double w = std::max(wa, b.weight_of(mask_indices(cb.mask)));
            if (best && w >= *best) continue;
            if (frechet_decision(ca.chain, cb.chain, params.delta3)) best = w;
        }
    }
    return best;
}

std::optional<std::size_t> brute_one_sided(const Chain& a, const Chain& b, double delta1, double delta3)
{
    guard(a, b);
    for (auto mask : masks_by_size(a.size())) {
        const auto sub = a.subsequence(mask_indices(mask));
        if (frechet_decision(a, sub, delta1) && frechet_decision(sub, b, delta3)) {
            return static_cast<std::size_t>(std::popcount(mask));
        }
    }
    return std::nullopt;
}

std::optional<std::size_t> brute_min_k(const Chain& a, const Chain& b, double delta)
{
    guard(a, b);
    for (auto mask : masks_by_size(a.size())) {
        if (frechet_decision(a.subsequence(mask_indices(mask)), b, delta)) {
            return static_cast<std::size_t>(std::popcount(mask));
        }
    }
    return std::nullopt;
}

double brute_min_delta(const Chain& a, const Chain& b, std::size_t k)
{
    guard(a, b);
    if (k == 0) throw InvalidArgument("k must be at least 1");
    double best = std::numeric_limits<double>::infinity();
    for (auto mask : masks_by_size(a.size())) {
        if (static_cast<std::size_t>(std::popcount(mask)) > k) break;
        best = std::min(best, discrete_frechet(a.subsequence(mask_indices(mask)), b).value);
    }
    return best;
}

bool partition_brute(const std::vector<unsigned>& set)
{
    if (set.size() > kMaxPartitionSize) {
        throw SizeGuardExceeded(fmt::format("partition oracle limited to {} elements", kMaxPartitionSize));
    }
    const std::uint64_t total = std::accumulate(set.begin(), set.end(), std::uint64_t{0});
    if (set.empty() || total % 2 != 0) return false;
    for (std::uint32_t mask = 0; mask < (1u << set.size()); ++mask) {
        std::uint64_t sum = 0;
        for (std::size_t k = 0; k < set.size(); ++k) {
            if (mask & (1u << k)) sum += set[k];
        }
        if (2 * sum == total) return true;
    }
    return false;
}

ReductionInstance make_reduction_instance(const std::vector<unsigned>& set, bool positive_variant)
{
    if (set.empty()) throw InvalidArgument("reduction needs a nonempty set");
    std::vector<Point> pa;
    std::vector<Point> pb;
    std::vector<double> wa;
    std::vector<double> wb;
    const double shift = positive_variant ? 1.0 : 0.0;
    double self_leash = 0.0;
    for (std::size_t k = 0; k < set.size(); ++k) {
        const double x = static_cast<double>(k + 1);
        const double s = static_cast<double>(set[k]);
        pa.emplace_back(x, 1.0);
        pa.emplace_back(x + 0.2, 1.0);
        pb.emplace_back(x, 0.0);
        pb.emplace_back(x + 0.2, 0.0);
        wa.push_back(s + shift);
        wa.push_back(shift);
        wb.push_back(shift);
        wb.push_back(s + shift);
        self_leash = std::max(self_leash, euclidean_distance(pa[pa.size() - 2], pa.back()));
        self_leash = std::max(self_leash, euclidean_distance(pb[pb.size() - 2], pb.back()));
    }
    const double total = std::accumulate(set.begin(), set.end(), 0.0);

    ReductionInstance inst{Chain(std::move(pa), std::move(wa)), Chain(std::move(pb), std::move(wb)), {}, 0.0, set};
    inst.params.delta1 = self_leash;
    inst.params.delta2 = self_leash;
    inst.params.delta3 = 1.0;
    inst.params.endpoint_mode = EndpointMode::free_dogs;
    inst.budget = total / 2.0 + (positive_variant ? static_cast<double>(set.size()) : 0.0);
    return inst;
}

}  // namespace cps::oracle
