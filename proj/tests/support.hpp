#pragma once

// Independent reference implementations and random inputs shared by the unit
// tests and the acceptance suite.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "matchdist/bottleneck.hpp"
#include "matchdist/complex.hpp"
#include "matchdist/generator.hpp"
#include "matchdist/persistence.hpp"
#include "matchdist/slice.hpp"
#include "matchdist/solver.hpp"

namespace mdtest {

using namespace matchdist;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// ---------------------------------------------------------------------------
// Weighted push from the line geometry: the smallest t with O + t (cos g, sin g)
// dominating p, scaled by sin g for flat lines and cos g for steep ones.
// ---------------------------------------------------------------------------

inline double geometric_push(const Point2& p, const Slice& s)
{
    const bool flat = is_flat(s.type);
    const double gamma = flat ? std::atan(s.lambda) : std::numbers::pi / 2 - std::atan(s.lambda);
    const Point2 origin = is_x_type(s.type) ? Point2{s.mu, 0.0} : Point2{0.0, s.mu};
    const double t = std::max((p.x - origin.x) / std::cos(gamma), (p.y - origin.y) / std::sin(gamma));
    return t * (flat ? std::sin(gamma) : std::cos(gamma));
}

// ---------------------------------------------------------------------------
// Bottleneck distance by enumerating every partial matching.
// ---------------------------------------------------------------------------

namespace detail {

struct Pt {
    double b, d;  // d may be infinite
};

inline double pair_cost(const Pt& p, const Pt& q)
{
    const bool pe = std::isinf(p.d), qe = std::isinf(q.d);
    if (pe != qe) return kInf;
    if (pe) return std::abs(p.b - q.b);
    return std::max(std::abs(p.b - q.b), std::abs(p.d - q.d));
}

inline double diagonal_cost(const Pt& p) { return std::isinf(p.d) ? kInf : (p.d - p.b) / 2; }

inline void enumerate(const std::vector<Pt>& a, const std::vector<Pt>& b, std::size_t i, std::vector<bool>& used,
                      double worst, double& best)
{
    if (worst >= best) return;
    if (i == a.size()) {
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!used[j]) worst = std::max(worst, diagonal_cost(b[j]));
        best = std::min(best, worst);
        return;
    }
    enumerate(a, b, i + 1, used, std::max(worst, diagonal_cost(a[i])), best);
    for (std::size_t j = 0; j < b.size(); ++j) {
        if (used[j]) continue;
        used[j] = true;
        enumerate(a, b, i + 1, used, std::max(worst, pair_cost(a[i], b[j])), best);
        used[j] = false;
    }
}

inline std::vector<Pt> points_of(const Diagram& d)
{
    std::vector<Pt> out;
    for (const auto& p : d.finite) out.push_back({p.birth, p.death});
    for (double b : d.essential) out.push_back({b, kInf});
    return out;
}

}  // namespace detail

inline double brute_bottleneck(const Diagram& a, const Diagram& b)
{
    const auto pa = detail::points_of(a);
    const auto pb = detail::points_of(b);
    std::vector<bool> used(pb.size(), false);
    double best = kInf;
    // Start from "infinitely bad" so the first complete matching is recorded.
    detail::enumerate(pa, pb, 0, used, -kInf, best);
    return std::max(best, 0.0);
}

// ---------------------------------------------------------------------------
// Slices sampled on a regular grid of a parameter box, corners included.
// ---------------------------------------------------------------------------

inline std::vector<Slice> grid_slices(const ParamBox& b, int n)
{
    std::vector<Slice> out;
    out.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double fl = n == 1 ? 0.5 : static_cast<double>(i) / (n - 1);
            const double fm = n == 1 ? 0.5 : static_cast<double>(j) / (n - 1);
            out.push_back({b.lambda_min + fl * b.delta_lambda(), b.mu_min + fm * b.delta_mu(), b.type});
        }
    }
    return out;
}

/// Maximum of |push(p, L) - push(p, center)| over an n x n grid of slices.
inline double grid_variation(const Point2& p, const ParamBox& b, int n)
{
    const double c = weighted_push(p, center(b));
    double v = 0.0;
    for (const Slice& s : grid_slices(b, n)) v = std::max(v, std::abs(weighted_push(p, s) - c));
    return v;
}

/// Lower estimate of the matching distance: the largest Eval over an n x n
/// grid of slices of every type, boundaries included.
inline double sampled_matching_distance(const BiFiltration& f1, const BiFiltration& f2, int dim, int n)
{
    const Evaluator eval(f1, f2, dim);
    double best = 0.0;
    for (const ParamBox& root : initial_boxes(f1, f2))
        for (const Slice& s : grid_slices(root, n)) best = std::max(best, eval(s));
    return best;
}

// ---------------------------------------------------------------------------
// Random inputs.
// ---------------------------------------------------------------------------

/// Random 1-critical bi-filtration with integer coordinates from the generator.
inline BiFiltration random_one_critical(Rng& rng, std::uint32_t vertices, std::uint32_t maximal, std::uint32_t dim,
                                        std::uint32_t coord_range)
{
    GenSpec spec;
    spec.n_vertices = vertices;
    spec.n_maximal = maximal;
    spec.max_dim = dim;
    spec.coord_range = coord_range;
    spec.seed = rng();
    return generate_random(spec);
}

/// Replaces each simplex's value by up to k random critical values, each
/// dominating one chosen critical value of every facet.
inline BiFiltration random_k_critical(Rng& rng, const BiFiltration& base, int k, double jitter)
{
    const SimplicialComplex& c = base.complex();
    std::vector<std::vector<Point2>> crit(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        const int count = uniform_int(rng, 1, k);
        for (int r = 0; r < count; ++r) {
            Point2 p{0.0, 0.0};
            for (std::uint32_t f : c.facets(i)) {
                const auto& fc = crit[f];
                const Point2& q = fc[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(fc.size()) - 1))];
                p = {std::max(p.x, q.x), std::max(p.y, q.y)};
            }
            p.x += uniform(rng, 0.0, jitter);
            p.y += uniform(rng, 0.0, jitter);
            crit[i].push_back(p);
        }
    }
    std::vector<RawSimplex> raw;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto v = c.simplex(i).vertices();
        raw.push_back({{v.begin(), v.end()}, crit[i]});
    }
    return validate_bifiltration(std::move(raw));
}

/// Random mono-filtration on a random complex; small integer steps make ties common.
inline MonoFiltration random_mono(Rng& rng, std::size_t max_simplices)
{
    BiFiltration base;
    for (;;) {
        GenSpec spec;
        spec.n_vertices = static_cast<std::uint32_t>(uniform_int(rng, 3, 8));
        spec.n_maximal = static_cast<std::uint32_t>(uniform_int(rng, 1, 8));
        spec.max_dim = static_cast<std::uint32_t>(uniform_int(rng, 1, 2));
        spec.coord_range = 10;
        spec.seed = rng();
        try {
            spec.validate();
        } catch (const Error&) {
            continue;
        }
        base = generate_random(spec);
        if (base.size() <= max_simplices) break;
    }
    const SimplicialComplex& c = base.complex();
    std::vector<double> values(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        double v = 0.0;
        for (std::uint32_t f : c.facets(i)) v = std::max(v, values[f]);
        values[i] = v + uniform_int(rng, 0, 3) * 0.25;
    }
    return MonoFiltration(base.shared_complex(), std::move(values));
}

/// Diagram with at most max_points points on a coarse grid, some essential.
inline Diagram random_diagram(Rng& rng, int max_points, int dim = 0)
{
    Diagram d;
    d.dimension = dim;
    const int n = uniform_int(rng, 0, max_points);
    for (int i = 0; i < n; ++i) {
        const double b = uniform_int(rng, 0, 16) * 0.25;
        if (uniform_int(rng, 0, 3) == 0) {
            d.essential.push_back(b);
        } else {
            d.finite.push_back({b, b + uniform_int(rng, 1, 12) * 0.25});
        }
    }
    return d;
}

inline Diagram transformed(const Diagram& d, double scale, double shift)
{
    Diagram out = d;
    for (auto& p : out.finite) p = {scale * p.birth + shift, scale * p.death + shift};
    for (double& b : out.essential) b = scale * b + shift;
    return out;
}

/// Smallest level at which the global bound alone certifies epsilon: boxes at
/// this level are never subdivided in absolute mode.
inline unsigned level_cap(double c, double epsilon)
{
    const double k = std::ceil(std::log2(2.0 * c / epsilon));
    return k > 0.0 ? static_cast<unsigned>(k) : 0u;
}

}  // namespace mdtest
