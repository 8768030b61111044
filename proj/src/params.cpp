#include <cmath>

#include <fmt/format.h>

#include "cps/solver.hpp"

namespace cps {

std::string_view to_string(EndpointMode mode)
{
    switch (mode) {
    case EndpointMode::anchored: return "anchored";
    case EndpointMode::free_dogs: return "free_dogs";
    }
    return "?";
}

EndpointMode endpoint_mode_from_string(std::string_view text)
{
    if (text == "anchored") return EndpointMode::anchored;
    if (text == "free_dogs" || text == "free-dogs" || text == "free") return EndpointMode::free_dogs;
    throw InvalidArgument(fmt::format("unknown endpoint mode '{}'", text));
}

std::string_view to_string(SolveStatus status)
{
    switch (status) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::no_solution: return "no_solution";
    case SolveStatus::r_cap_inconclusive: return "r_cap_inconclusive";
    case SolveStatus::timed_out: return "timed_out";
    }
    return "?";
}

void CpsParams::validate() const
{
    for (double d : {delta1, delta2, delta3}) {
        if (!(d >= 0.0) || !std::isfinite(d)) {
            throw InvalidArgument("deltas must be finite and nonnegative");
        }
    }
    if (r_cap && *r_cap == 0) throw InvalidArgument("r_cap must be positive");
}

}  // namespace cps
