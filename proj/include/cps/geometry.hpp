#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cps {

/// Raised when an argument violates an operation's contract.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A point in the plane or in space. Unused trailing coordinates are zero.
class Point {
public:
    Point(double x, double y) : coords_{x, y, 0.0}, dim_(2) { check(); }
    Point(double x, double y, double z) : coords_{x, y, z}, dim_(3) { check(); }

    static Point from_span(std::span<const double> coords);

    [[nodiscard]] std::size_t dim() const { return dim_; }
    [[nodiscard]] double operator[](std::size_t k) const { return coords_[k]; }
    [[nodiscard]] std::span<const double> coords() const { return {coords_.data(), dim_}; }

    friend bool operator==(const Point&, const Point&) = default;

private:
    void check() const;

    std::array<double, 3> coords_;
    std::size_t dim_;
};

/// Euclidean distance; throws InvalidArgument on a dimension mismatch.
double euclidean_distance(const Point& p, const Point& q);

/// A nonempty polygonal chain with optional nonnegative vertex weights.
///
/// Chains without explicit weights report unit weight for every vertex.
/// Zero weights are admitted so that the set-partition construction can be
/// represented directly; file loaders reject them.
class Chain {
public:
    explicit Chain(std::vector<Point> points);
    Chain(std::vector<Point> points, std::vector<double> weights);

    [[nodiscard]] std::size_t size() const { return points_.size(); }
    [[nodiscard]] std::size_t dim() const { return points_.front().dim(); }
    [[nodiscard]] const Point& operator[](std::size_t i) const { return points_[i]; }
    [[nodiscard]] const std::vector<Point>& points() const { return points_; }

    [[nodiscard]] bool has_weights() const { return !weights_.empty(); }
    [[nodiscard]] double weight(std::size_t i) const { return weights_.empty() ? 1.0 : weights_[i]; }
    [[nodiscard]] const std::vector<double>& explicit_weights() const { return weights_; }

    /// Sub-chain made of the listed vertices (weights carried along).
    [[nodiscard]] Chain subsequence(std::span<const std::size_t> indices) const;

    /// Total weight of the listed vertices.
    [[nodiscard]] double weight_of(std::span<const std::size_t> indices) const;

    friend bool operator==(const Chain&, const Chain&) = default;

private:
    std::vector<Point> points_;
    std::vector<double> weights_;
};

using IndexPair = std::pair<std::size_t, std::size_t>;

struct FrechetResult {
    double value = 0.0;
    /// Monotone coupling from (0,0) to (m-1,n-1) whose largest pair distance is `value`.
    std::vector<IndexPair> coupling;
};

/// Reachability of (m-1,n-1) from (0,0) in the free-space graph at leash `delta`.
bool frechet_decision(const Chain& a, const Chain& b, double delta);

/// Discrete Frechet distance with one witness coupling.
///
/// Ties in the traceback prefer the diagonal step, then an advance along `a`,
/// then an advance along `b`.
FrechetResult discrete_frechet(const Chain& a, const Chain& b);

/// True iff `indices` select a subsequence of `a` within discrete Frechet
/// distance `delta` of `a`. Indices are 0-based and must be strictly increasing.
bool verify_simplification(const Chain& a, std::span<const std::size_t> indices, double delta);

/// Largest distance between two vertices of the chain.
double diameter(const Chain& a);

/// Largest distance between a vertex of `a` and a vertex of `b`.
double max_cross_distance(const Chain& a, const Chain& b);

/// Sorted distinct pairwise distances {d(a_i, b_j)}.
std::vector<double> cross_distances(const Chain& a, const Chain& b);

}  // namespace cps
