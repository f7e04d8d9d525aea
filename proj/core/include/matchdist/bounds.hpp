#pragma once

#include <optional>
#include <string_view>

#include "matchdist/complex.hpp"
#include "matchdist/slice.hpp"

namespace matchdist {

/// Upper-bound rule for the bottleneck distance over a box of slices.
/// On subdivision boxes LocalLinear <= LocalConstant <= Global.
enum class BoundKind { Global, LocalConstant, LocalLinear };

std::string_view to_string(BoundKind k);  // "g", "c", "l"
std::optional<BoundKind> bound_kind_from_string(std::string_view s);

/// Largest change of p's weighted push between the center slice of b and any
/// slice of b. The maximum is attained at a corner, so this is exact.
double variation_point(const Point2& p, const ParamBox& b);

/// Maximum of variation_point over every critical value of f. For k-critical
/// input this bounds the simplex-level variation from above.
double variation_filtration(const BiFiltration& f, const ParamBox& b);

/// Local linear bound: v(F1,B) + d_center + v(F2,B).
///
/// With a threshold, the scan over critical values stops as soon as the
/// partial sum exceeds it; the returned value is then some number above the
/// threshold rather than the full bound.
double bound_L(const BiFiltration& f1, const BiFiltration& f2, const ParamBox& b, double d_center,
               std::optional<double> threshold = std::nullopt);

/// Per-point variation bound for the box's type that does not depend on the
/// point, valid for points in [0,X] x [0,Y].
double constant_variation(const ParamBox& b, double max_x, double max_y);

/// Local constant bound: d_center + 2 * constant_variation.
double bound_C(const BiFiltration& f1, const BiFiltration& f2, const ParamBox& b, double d_center);

/// Global bound from the box level alone: d_center + 2 * C * 2^-level with
/// C = max(X, Y). Throws InvalidLevel when b is not a level-`level` box of
/// the subdivision.
double bound_G(const BiFiltration& f1, const BiFiltration& f2, const ParamBox& b, double d_center);

double compute_bound(BoundKind kind, const BiFiltration& f1, const BiFiltration& f2, const ParamBox& b,
                     double d_center, std::optional<double> threshold = std::nullopt);

}  // namespace matchdist
