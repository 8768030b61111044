#include "cps/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace cps {

Point Point::from_span(std::span<const double> coords)
{
    if (coords.size() == 2) return Point(coords[0], coords[1]);
    if (coords.size() == 3) return Point(coords[0], coords[1], coords[2]);
    throw InvalidArgument(fmt::format("point dimension must be 2 or 3, got {}", coords.size()));
}

void Point::check() const
{
    for (std::size_t k = 0; k < dim_; ++k) {
        if (!std::isfinite(coords_[k])) throw InvalidArgument("point coordinates must be finite");
    }
}

double euclidean_distance(const Point& p, const Point& q)
{
    if (p.dim() != q.dim()) {
        throw InvalidArgument(fmt::format("dimension mismatch: {} vs {}", p.dim(), q.dim()));
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < p.dim(); ++k) {
        const double d = p[k] - q[k];
        sum += d * d;
    }
    return std::sqrt(sum);
}

Chain::Chain(std::vector<Point> points) : Chain(std::move(points), {}) {}

Chain::Chain(std::vector<Point> points, std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights))
{
    if (points_.empty()) throw InvalidArgument("chain must contain at least one point");
    const auto d = points_.front().dim();
    for (const auto& p : points_) {
        if (p.dim() != d) throw InvalidArgument("all chain points must share one dimension");
    }
    if (!weights_.empty()) {
        if (weights_.size() != points_.size()) {
            throw InvalidArgument("weight count must match point count");
        }
        for (double w : weights_) {
            if (!(w >= 0.0) || !std::isfinite(w)) {
                throw InvalidArgument("chain weights must be finite and nonnegative");
            }
        }
    }
}

Chain Chain::subsequence(std::span<const std::size_t> indices) const
{
    std::vector<Point> pts;
    std::vector<double> ws;
    pts.reserve(indices.size());
    for (auto i : indices) {
        if (i >= size()) throw InvalidArgument(fmt::format("index {} out of range", i));
        pts.push_back(points_[i]);
        if (has_weights()) ws.push_back(weights_[i]);
    }
    return Chain(std::move(pts), std::move(ws));
}

double Chain::weight_of(std::span<const std::size_t> indices) const
{
    double total = 0.0;
    for (auto i : indices) total += weight(i);
    return total;
}

namespace {

void require_same_dim(const Chain& a, const Chain& b)
{
    if (a.dim() != b.dim()) {
        throw InvalidArgument(fmt::format("chain dimension mismatch: {} vs {}", a.dim(), b.dim()));
    }
}

}  // namespace

bool frechet_decision(const Chain& a, const Chain& b, double delta)
{
    require_same_dim(a, b);
    const auto m = a.size();
    const auto n = b.size();
    // reach[j] holds row i of the reachability table.
    std::vector<char> reach(n, 0);
    for (std::size_t i = 0; i < m; ++i) {
        char diag = 0;  // reach[i-1][j-1]
        for (std::size_t j = 0; j < n; ++j) {
            const char up = reach[j];
            const char left = j > 0 ? reach[j - 1] : 0;
            char r = 0;
            if (euclidean_distance(a[i], b[j]) <= delta) {
                r = (i == 0 && j == 0) || up || left || diag;
            }
            diag = up;
            reach[j] = r;
        }
    }
    return reach[n - 1] != 0;
}

FrechetResult discrete_frechet(const Chain& a, const Chain& b)
{
    require_same_dim(a, b);
    const auto m = a.size();
    const auto n = b.size();
    std::vector<double> ca(m * n);
    auto at = [&](std::size_t i, std::size_t j) -> double& { return ca[i * n + j]; };

    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double d = euclidean_distance(a[i], b[j]);
            if (i == 0 && j == 0) {
                at(i, j) = d;
                continue;
            }
            double best = std::numeric_limits<double>::infinity();
            if (i > 0 && j > 0) best = std::min(best, at(i - 1, j - 1));
            if (i > 0) best = std::min(best, at(i - 1, j));
            if (j > 0) best = std::min(best, at(i, j - 1));
            at(i, j) = std::max(d, best);
        }
    }

    FrechetResult result;
    result.value = at(m - 1, n - 1);
    std::size_t i = m - 1;
    std::size_t j = n - 1;
    result.coupling.emplace_back(i, j);
    while (i > 0 || j > 0) {
        // Strict < keeps the earlier (preferred) candidate on ties.
        std::size_t ni = i;
        std::size_t nj = j;
        double best = std::numeric_limits<double>::infinity();
        if (i > 0 && j > 0 && at(i - 1, j - 1) < best) {
            best = at(i - 1, j - 1);
            ni = i - 1;
            nj = j - 1;
        }
        if (i > 0 && at(i - 1, j) < best) {
            best = at(i - 1, j);
            ni = i - 1;
            nj = j;
        }
        if (j > 0 && at(i, j - 1) < best) {
            best = at(i, j - 1);
            ni = i;
            nj = j - 1;
        }
        i = ni;
        j = nj;
        result.coupling.emplace_back(i, j);
    }
    std::reverse(result.coupling.begin(), result.coupling.end());
    return result;
}

bool verify_simplification(const Chain& a, std::span<const std::size_t> indices, double delta)
{
    if (indices.empty()) throw InvalidArgument("simplification must select at least one vertex");
    for (std::size_t k = 0; k < indices.size(); ++k) {
        if (indices[k] >= a.size()) {
            throw InvalidArgument(fmt::format("simplification index {} out of range", indices[k]));
        }
        if (k > 0 && indices[k] <= indices[k - 1]) {
            throw InvalidArgument("simplification indices must be strictly increasing");
        }
    }
    return frechet_decision(a, a.subsequence(indices), delta);
}

double diameter(const Chain& a)
{
    double best = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = i + 1; j < a.size(); ++j) best = std::max(best, euclidean_distance(a[i], a[j]));
    }
    return best;
}

double max_cross_distance(const Chain& a, const Chain& b)
{
    double best = 0.0;
    for (const auto& p : a.points()) {
        for (const auto& q : b.points()) best = std::max(best, euclidean_distance(p, q));
    }
    return best;
}

std::vector<double> cross_distances(const Chain& a, const Chain& b)
{
    std::vector<double> ds;
    ds.reserve(a.size() * b.size());
    for (const auto& p : a.points()) {
        for (const auto& q : b.points()) ds.push_back(euclidean_distance(p, q));
    }
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    return ds;
}

}  // namespace cps
