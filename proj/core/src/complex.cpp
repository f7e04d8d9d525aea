#include "matchdist/complex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace matchdist {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidSimplex: return "InvalidSimplex";
    case ErrorCode::DuplicateSimplex: return "DuplicateSimplex";
    case ErrorCode::MissingFace: return "MissingFace";
    case ErrorCode::MonotonicityViolation: return "MonotonicityViolation";
    case ErrorCode::EmptyCriticalSet: return "EmptyCriticalSet";
    case ErrorCode::NonFiniteCoordinate: return "NonFiniteCoordinate";
    case ErrorCode::MissingVertexValue: return "MissingVertexValue";
    case ErrorCode::DegenerateBox: return "DegenerateBox";
    case ErrorCode::InvalidLevel: return "InvalidLevel";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InfeasibleSpec: return "InfeasibleSpec";
    case ErrorCode::DepthTooLarge: return "DepthTooLarge";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

namespace {

std::string describe(const Simplex& s)
{
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (VertexId v : s.vertices()) {
        if (!first) os << ',';
        os << v;
        first = false;
    }
    os << '}';
    return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Simplex
// ---------------------------------------------------------------------------

Simplex::Simplex(std::vector<VertexId> vertices) : vertices_(std::move(vertices))
{
    if (vertices_.empty()) fail(ErrorCode::InvalidSimplex, "simplex without vertices");
    std::sort(vertices_.begin(), vertices_.end());
    if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
        fail(ErrorCode::InvalidSimplex, "repeated vertex in " + describe(*this));
}

std::vector<Simplex> Simplex::facets() const
{
    std::vector<Simplex> out;
    if (vertices_.size() < 2) return out;
    out.reserve(vertices_.size());
    // Dropping the last vertex first yields the lexicographically smallest facet.
    for (std::size_t skip = vertices_.size(); skip-- > 0;) {
        Simplex f;
        f.vertices_.reserve(vertices_.size() - 1);
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            if (i != skip) f.vertices_.push_back(vertices_[i]);
        out.push_back(std::move(f));
    }
    return out;
}

bool operator<(const Simplex& a, const Simplex& b)
{
    if (a.vertices_.size() != b.vertices_.size()) return a.vertices_.size() < b.vertices_.size();
    return a.vertices_ < b.vertices_;
}

// ---------------------------------------------------------------------------
// CriticalSet
// ---------------------------------------------------------------------------

CriticalSet::CriticalSet(std::vector<Point2> points)
{
    if (points.empty()) fail(ErrorCode::EmptyCriticalSet, "simplex without critical values");
    // Sort by x, ties by y; a sweep then keeps exactly the minimal elements.
    std::sort(points.begin(), points.end(), [](const Point2& a, const Point2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    double best_y = std::numeric_limits<double>::infinity();
    for (const Point2& p : points) {
        if (p.y < best_y) {
            points_.push_back(p);
            best_y = p.y;
        }
    }
}

bool CriticalSet::admits(const Point2& p) const
{
    return std::any_of(points_.begin(), points_.end(),
                       [&](const Point2& q) { return dominated_by(q, p); });
}

// ---------------------------------------------------------------------------
// SimplicialComplex
// ---------------------------------------------------------------------------

SimplicialComplex::SimplicialComplex(std::vector<Simplex> simplices) : simplices_(std::move(simplices))
{
    std::sort(simplices_.begin(), simplices_.end());
    auto dup = std::adjacent_find(simplices_.begin(), simplices_.end());
    if (dup != simplices_.end()) fail(ErrorCode::DuplicateSimplex, describe(*dup) + " listed twice");

    facet_offset_.reserve(simplices_.size() + 1);
    facet_offset_.push_back(0);
    for (const Simplex& s : simplices_) {
        max_dim_ = std::max(max_dim_, s.dimension());
        if (s.dimension() == 0) ++vertex_count_;
        for (const Simplex& f : s.facets()) {
            auto idx = find(f);
            if (!idx) fail(ErrorCode::MissingFace, "face " + describe(f) + " of " + describe(s) + " is absent");
            facet_index_.push_back(static_cast<std::uint32_t>(*idx));
        }
        facet_offset_.push_back(facet_index_.size());
    }
}

std::optional<std::size_t> SimplicialComplex::find(const Simplex& s) const
{
    auto it = std::lower_bound(simplices_.begin(), simplices_.end(), s);
    if (it == simplices_.end() || !(*it == s)) return std::nullopt;
    return static_cast<std::size_t>(it - simplices_.begin());
}

// ---------------------------------------------------------------------------
// BiFiltration
// ---------------------------------------------------------------------------

void BiFiltration::compute_extents()
{
    all_points_.clear();
    for (const CriticalSet& c : critical_)
        all_points_.insert(all_points_.end(), c.points().begin(), c.points().end());
    if (all_points_.empty()) {
        max_x_ = max_y_ = min_x_ = min_y_ = 0.0;
        return;
    }
    max_x_ = min_x_ = all_points_.front().x;
    max_y_ = min_y_ = all_points_.front().y;
    for (const Point2& p : all_points_) {
        max_x_ = std::max(max_x_, p.x);
        max_y_ = std::max(max_y_, p.y);
        min_x_ = std::min(min_x_, p.x);
        min_y_ = std::min(min_y_, p.y);
    }
}

std::vector<RawSimplex> BiFiltration::to_raw() const
{
    std::vector<RawSimplex> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) {
        auto v = complex_->simplex(i).vertices();
        auto c = critical_[i].points();
        out.push_back({{v.begin(), v.end()}, {c.begin(), c.end()}});
    }
    return out;
}

BiFiltration validate_bifiltration(std::vector<RawSimplex> raw)
{
    // Pair each simplex with its critical set so they survive the canonical sort together.
    std::vector<std::pair<Simplex, CriticalSet>> entries;
    entries.reserve(raw.size());
    for (RawSimplex& r : raw) {
        Simplex s(std::move(r.vertices));
        for (const Point2& p : r.critical)
            if (!std::isfinite(p.x) || !std::isfinite(p.y))
                fail(ErrorCode::NonFiniteCoordinate, "critical value of " + describe(s));
        if (r.critical.empty()) fail(ErrorCode::EmptyCriticalSet, "simplex " + describe(s));
        entries.emplace_back(std::move(s), CriticalSet(std::move(r.critical)));
    }
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<Simplex> simplices;
    simplices.reserve(entries.size());
    for (const auto& e : entries) simplices.push_back(e.first);

    BiFiltration f;
    auto complex = std::make_shared<SimplicialComplex>(std::move(simplices));
    f.critical_.reserve(entries.size());
    for (auto& e : entries) f.critical_.push_back(std::move(e.second));

    // P_sigma must be contained in P_tau for every facet tau; faces of faces follow by transitivity.
    for (std::size_t i = 0; i < complex->size(); ++i) {
        for (std::uint32_t j : complex->facets(i)) {
            for (const Point2& p : f.critical_[i].points()) {
                if (!f.critical_[j].admits(p)) {
                    std::ostringstream os;
                    os << "face " << describe(complex->simplex(j)) << " enters after "
                       << describe(complex->simplex(i)) << " at (" << p.x << ", " << p.y << ")";
                    fail(ErrorCode::MonotonicityViolation, os.str());
                }
            }
        }
    }
    f.complex_ = std::move(complex);
    f.compute_extents();
    return f;
}

BiFiltration translate(const BiFiltration& f, Point2 shift)
{
    BiFiltration out;
    out.complex_ = f.complex_;
    out.critical_.reserve(f.critical_.size());
    for (const CriticalSet& c : f.critical_) {
        std::vector<Point2> moved(c.points().begin(), c.points().end());
        for (Point2& p : moved) {
            p.x += shift.x;
            p.y += shift.y;
        }
        out.critical_.emplace_back(std::move(moved));
    }
    out.compute_extents();
    return out;
}

Normalized normalize_to_positive_quadrant(const BiFiltration& f)
{
    Point2 shift{-f.min_x(), -f.min_y()};
    if (shift.x == 0.0 && shift.y == 0.0) return {f, {0.0, 0.0}};
    return {translate(f, shift), shift};
}

std::pair<std::vector<RawSimplex>, Point2> normalize_to_positive_quadrant(std::vector<RawSimplex> raw)
{
    double min_x = std::numeric_limits<double>::infinity();
    double min_y = std::numeric_limits<double>::infinity();
    for (const RawSimplex& r : raw)
        for (const Point2& p : r.critical) {
            min_x = std::min(min_x, p.x);
            min_y = std::min(min_y, p.y);
        }
    if (!std::isfinite(min_x)) return {std::move(raw), {0.0, 0.0}};
    Point2 shift{-min_x, -min_y};
    for (RawSimplex& r : raw)
        for (Point2& p : r.critical) {
            p.x += shift.x;
            p.y += shift.y;
        }
    return {std::move(raw), shift};
}

NormalizedPair normalize_pair(const BiFiltration& a, const BiFiltration& b)
{
    Point2 shift{-std::min(a.min_x(), b.min_x()), -std::min(a.min_y(), b.min_y())};
    if (shift.x == 0.0 && shift.y == 0.0) return {a, b, {0.0, 0.0}};
    return {translate(a, shift), translate(b, shift), shift};
}

BiFiltration lower_star(const std::vector<std::vector<VertexId>>& simplices,
                        std::span<const Point2> vertex_values)
{
    std::vector<RawSimplex> raw;
    raw.reserve(simplices.size());
    for (const auto& verts : simplices) {
        if (verts.empty()) fail(ErrorCode::InvalidSimplex, "simplex without vertices");
        Point2 value{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
        for (VertexId v : verts) {
            if (v >= vertex_values.size())
                fail(ErrorCode::MissingVertexValue, "vertex " + std::to_string(v) + " has no value");
            value.x = std::max(value.x, vertex_values[v].x);
            value.y = std::max(value.y, vertex_values[v].y);
        }
        raw.push_back({verts, {value}});
    }
    return validate_bifiltration(std::move(raw));
}

// ---------------------------------------------------------------------------
// MonoFiltration
// ---------------------------------------------------------------------------

MonoFiltration::MonoFiltration(std::shared_ptr<const SimplicialComplex> complex, std::vector<double> values)
    : complex_(std::move(complex)), values_(std::move(values))
{
    if (values_.size() != complex_->size())
        fail(ErrorCode::InvalidConfig, "mono-filtration needs one value per simplex");
    for (std::size_t i = 0; i < values_.size(); ++i)
        for (std::uint32_t j : complex_->facets(i))
            if (!(values_[j] <= values_[i]))
                fail(ErrorCode::MonotonicityViolation,
                     "face " + describe(complex_->simplex(j)) + " of " + describe(complex_->simplex(i)));
}

MonoFiltration MonoFiltration::trusted(std::shared_ptr<const SimplicialComplex> complex,
                                       std::vector<double> values)
{
    MonoFiltration m;
    m.complex_ = std::move(complex);
    m.values_ = std::move(values);
    return m;
}

}  // namespace matchdist
