#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "matchdist/complex.hpp"

namespace matchdist {

/// The four slice families. Flat slices have slope <= 1, steep ones >= 1;
/// x-slices enter the positive quadrant through the x-axis, y-slices through
/// the y-axis. Enumerator order is the canonical iteration order.
enum class SliceType : std::uint8_t { FlatX, SteepX, FlatY, SteepY };

inline constexpr std::array<SliceType, 4> kSliceTypes{SliceType::FlatX, SliceType::SteepX, SliceType::FlatY,
                                                      SliceType::SteepY};

std::string_view to_string(SliceType t);                 // "flat_x", ...
std::optional<SliceType> slice_type_from_string(std::string_view s);

inline bool is_x_type(SliceType t) { return t == SliceType::FlatX || t == SliceType::SteepX; }
inline bool is_flat(SliceType t) { return t == SliceType::FlatX || t == SliceType::FlatY; }

/// A slice in (lambda, mu) coordinates. lambda is the slope (flat) or the
/// inverse slope (steep); mu is the non-zero coordinate of the origin.
/// lambda = 0 encodes the horizontal / vertical limit lines.
struct Slice {
    double lambda = 0.0;
    double mu = 0.0;
    SliceType type = SliceType::FlatX;

    friend bool operator==(const Slice&, const Slice&) = default;
};

/// Axis-parallel rectangle of slice parameters of one type.
struct ParamBox {
    double lambda_min = 0.0;
    double lambda_max = 1.0;
    double mu_min = 0.0;
    double mu_max = 0.0;
    SliceType type = SliceType::FlatX;
    unsigned level = 0;

    double delta_lambda() const { return lambda_max - lambda_min; }
    double delta_mu() const { return mu_max - mu_min; }

    friend bool operator==(const ParamBox&, const ParamBox&) = default;
};

/// Weighted push of p onto L. Points on the line use the "above" branch;
/// both branches agree there.
inline double weighted_push(const Point2& p, const Slice& L)
{
    switch (L.type) {
    case SliceType::FlatY:  // y = mu + lambda x
        return p.y >= L.mu + L.lambda * p.x ? p.y - L.mu : L.lambda * p.x;
    case SliceType::SteepY:  // x = lambda (y - mu)
        return p.x <= L.lambda * (p.y - L.mu) ? L.lambda * (p.y - L.mu) : p.x;
    case SliceType::FlatX:  // y = lambda (x - mu)
        return p.y >= L.lambda * (p.x - L.mu) ? p.y : L.lambda * (p.x - L.mu);
    case SliceType::SteepX:  // x - mu = lambda y
        return p.x - L.mu <= L.lambda * p.y ? L.lambda * p.y : p.x - L.mu;
    }
    return 0.0;
}

/// Weighted restriction: each simplex gets the minimum weighted push over its
/// critical values.
MonoFiltration restrict(const BiFiltration& f, const Slice& L);

/// Level-0 boxes over [0,1] x [0,X] (x-types) and [0,1] x [0,Y] (y-types),
/// X and Y taken over both filtrations, in canonical type order.
std::array<ParamBox, 4> initial_boxes(const BiFiltration& f1, const BiFiltration& f2);
std::array<ParamBox, 4> initial_boxes(double max_x, double max_y);

/// Quadrants split at the center: (low lambda, low mu), (high, low), (low, high), (high, high).
/// Throws DegenerateBox when the box is a single point.
std::array<ParamBox, 4> subdivide(const ParamBox& b);

Slice center(const ParamBox& b);

/// Corners in the order (lmin,mmin), (lmax,mmin), (lmin,mmax), (lmax,mmax).
std::array<Slice, 4> corners(const ParamBox& b);

}  // namespace matchdist
