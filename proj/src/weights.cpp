#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "cps/solver.hpp"

namespace cps {

std::vector<double> obtainable_weights(const Chain& chain, std::size_t max_count)
{
    // sums holds the distinct nonempty-subset sums of the weights seen so far.
    std::vector<double> sums;
    std::vector<double> shifted;
    std::vector<double> merged;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        const double w = chain.weight(i);
        shifted.clear();
        shifted.push_back(w);
        for (double s : sums) {
            const double t = s + w;
            if (!std::isfinite(t)) throw InvalidArgument("obtainable weight overflows");
            shifted.push_back(t);
        }
        std::sort(shifted.begin(), shifted.end());
        merged.clear();
        std::set_union(sums.begin(), sums.end(), shifted.begin(), shifted.end(),
                       std::back_inserter(merged));
        merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
        if (merged.size() > max_count) {
            throw InvalidArgument(fmt::format("more than {} obtainable weights", max_count));
        }
        sums.swap(merged);
    }
    return sums;
}

}  // namespace cps
