#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "matchdist/error.hpp"

namespace matchdist {

using VertexId = std::uint32_t;

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

/// Product order: p <= q iff q lies in the closed upper-right quadrant of p.
inline bool dominated_by(const Point2& p, const Point2& q)
{
    return p.x <= q.x && p.y <= q.y;
}

/// A simplex is identified by its strictly increasing vertex tuple.
class Simplex {
public:
    Simplex() = default;

    /// Sorts the input; throws InvalidSimplex on an empty list or a repeated vertex.
    explicit Simplex(std::vector<VertexId> vertices);

    std::span<const VertexId> vertices() const { return vertices_; }
    int dimension() const { return static_cast<int>(vertices_.size()) - 1; }

    /// Codimension-one faces, in lexicographic order. Empty for a vertex.
    std::vector<Simplex> facets() const;

    friend bool operator==(const Simplex&, const Simplex&) = default;
    /// Ordering by (dimension, lexicographic vertices).
    friend bool operator<(const Simplex& a, const Simplex& b);

private:
    std::vector<VertexId> vertices_;
};

/// Non-empty antichain of critical values under the product order.
class CriticalSet {
public:
    CriticalSet() = default;

    /// Removes duplicates and dominated points; throws EmptyCriticalSet.
    explicit CriticalSet(std::vector<Point2> points);

    std::span<const Point2> points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    const Point2& front() const { return points_.front(); }

    /// True iff some critical value of this set lies below-left of p.
    bool admits(const Point2& p) const;

private:
    std::vector<Point2> points_;  // sorted by x ascending (so y descending)
};

/// Face-closed simplicial complex in canonical (dimension, lexicographic) order.
/// Facet incidences are precomputed for the persistence routines.
class SimplicialComplex {
public:
    /// Throws DuplicateSimplex or MissingFace. The input order is irrelevant.
    explicit SimplicialComplex(std::vector<Simplex> simplices);

    std::size_t size() const { return simplices_.size(); }
    const Simplex& simplex(std::size_t i) const { return simplices_[i]; }
    std::span<const Simplex> simplices() const { return simplices_; }
    int dimension(std::size_t i) const { return simplices_[i].dimension(); }
    int max_dimension() const { return max_dim_; }
    std::size_t vertex_count() const { return vertex_count_; }

    /// Indices of the codimension-one faces of simplex i.
    std::span<const std::uint32_t> facets(std::size_t i) const
    {
        return {facet_index_.data() + facet_offset_[i], facet_offset_[i + 1] - facet_offset_[i]};
    }

    std::optional<std::size_t> find(const Simplex& s) const;

private:
    std::vector<Simplex> simplices_;
    std::vector<std::size_t> facet_offset_;
    std::vector<std::uint32_t> facet_index_;
    std::size_t vertex_count_ = 0;
    int max_dim_ = -1;
};

/// One simplex of unvalidated input: its vertices and critical values.
struct RawSimplex {
    std::vector<VertexId> vertices;
    std::vector<Point2> critical;
};

/// (k-critical) bi-filtration. Immutable after construction.
class BiFiltration {
public:
    BiFiltration() = default;

    std::size_t size() const { return critical_.size(); }
    const SimplicialComplex& complex() const { return *complex_; }
    std::shared_ptr<const SimplicialComplex> shared_complex() const { return complex_; }
    const CriticalSet& critical(std::size_t i) const { return critical_[i]; }

    /// All critical values of all simplices, flattened.
    std::span<const Point2> critical_points() const { return all_points_; }

    double max_x() const { return max_x_; }
    double max_y() const { return max_y_; }
    double min_x() const { return min_x_; }
    double min_y() const { return min_y_; }
    double c_max() const { return max_x_ > max_y_ ? max_x_ : max_y_; }
    bool one_critical() const { return all_points_.size() == critical_.size(); }

    /// Raw form in canonical simplex order, suitable for serialization.
    std::vector<RawSimplex> to_raw() const;

private:
    friend BiFiltration validate_bifiltration(std::vector<RawSimplex> raw);
    friend BiFiltration translate(const BiFiltration& f, Point2 shift);

    void compute_extents();

    std::shared_ptr<const SimplicialComplex> complex_;
    std::vector<CriticalSet> critical_;
    std::vector<Point2> all_points_;
    double max_x_ = 0.0, max_y_ = 0.0, min_x_ = 0.0, min_y_ = 0.0;
};

/// Mono-filtration: one real value per simplex of a shared complex, monotone along faces.
class MonoFiltration {
public:
    /// Throws MonotonicityViolation if some face has a larger value than its coface.
    MonoFiltration(std::shared_ptr<const SimplicialComplex> complex, std::vector<double> values);

    /// Skips the face check. Callers guarantee monotonicity.
    static MonoFiltration trusted(std::shared_ptr<const SimplicialComplex> complex,
                                  std::vector<double> values);

    const SimplicialComplex& complex() const { return *complex_; }
    std::span<const double> values() const { return values_; }
    double value(std::size_t i) const { return values_[i]; }
    std::size_t size() const { return values_.size(); }

private:
    MonoFiltration() = default;

    std::shared_ptr<const SimplicialComplex> complex_;
    std::vector<double> values_;
};

/// Checks closure, monotonicity and finiteness; computes the coordinate extents.
BiFiltration validate_bifiltration(std::vector<RawSimplex> raw);

/// Translates every critical value by `shift`.
BiFiltration translate(const BiFiltration& f, Point2 shift);

struct Normalized {
    BiFiltration filtration;
    Point2 shift;
};

/// Translates so the minimal x and minimal y coordinates are both zero.
Normalized normalize_to_positive_quadrant(const BiFiltration& f);

/// Raw-input variant; no validation is performed.
std::pair<std::vector<RawSimplex>, Point2> normalize_to_positive_quadrant(std::vector<RawSimplex> raw);

struct NormalizedPair {
    BiFiltration first;
    BiFiltration second;
    Point2 shift;
};

/// Translates both filtrations by the same vector so their joint minima are zero.
/// The matching distance is invariant under a common translation.
NormalizedPair normalize_pair(const BiFiltration& a, const BiFiltration& b);

/// Lower-star bi-filtration: each simplex gets the componentwise max of its vertex values.
/// Vertex id i reads vertex_values[i]; throws MissingVertexValue if out of range.
BiFiltration lower_star(const std::vector<std::vector<VertexId>>& simplices,
                        std::span<const Point2> vertex_values);

}  // namespace matchdist
