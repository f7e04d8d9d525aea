#include "matchdist/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace matchdist {

std::string_view to_string(BoundKind k)
{
    switch (k) {
    case BoundKind::Global: return "g";
    case BoundKind::LocalConstant: return "c";
    case BoundKind::LocalLinear: return "l";
    }
    return "?";
}

std::optional<BoundKind> bound_kind_from_string(std::string_view s)
{
    if (s == "g") return BoundKind::Global;
    if (s == "c") return BoundKind::LocalConstant;
    if (s == "l") return BoundKind::LocalLinear;
    return std::nullopt;
}

namespace {

struct CornerFrame {
    Slice center;
    std::array<Slice, 4> corners;

    explicit CornerFrame(const ParamBox& b) : center(matchdist::center(b)), corners(matchdist::corners(b)) {}

    double variation(const Point2& p) const
    {
        const double c = weighted_push(p, center);
        double v = 0.0;
        for (const Slice& s : corners) v = std::max(v, std::abs(weighted_push(p, s) - c));
        return v;
    }
};

double max_x_of(const BiFiltration& a, const BiFiltration& b) { return std::max(a.max_x(), b.max_x()); }
double max_y_of(const BiFiltration& a, const BiFiltration& b) { return std::max(a.max_y(), b.max_y()); }

}  // namespace

double variation_point(const Point2& p, const ParamBox& b)
{
    return CornerFrame(b).variation(p);
}

double variation_filtration(const BiFiltration& f, const ParamBox& b)
{
    CornerFrame frame(b);
    double v = 0.0;
    for (const Point2& p : f.critical_points()) v = std::max(v, frame.variation(p));
    return v;
}

double bound_L(const BiFiltration& f1, const BiFiltration& f2, const ParamBox& b, double d_center,
               std::optional<double> threshold)
{
    CornerFrame frame(b);
    double v1 = 0.0;
    for (const Point2& p : f1.critical_points()) {
        v1 = std::max(v1, frame.variation(p));
        if (threshold && v1 + d_center > *threshold) return v1 + d_center;
    }
    double v2 = 0.0;
    for (const Point2& p : f2.critical_points()) {
        v2 = std::max(v2, frame.variation(p));
        if (threshold && v1 + d_center + v2 > *threshold) return v1 + d_center + v2;
    }
    return v1 + d_center + v2;
}

double constant_variation(const ParamBox& b, double max_x, double max_y)
{
    const double dl = b.delta_lambda();
    const double dm = b.delta_mu();
    const double lc = 0.5 * (b.lambda_min + b.lambda_max);
    switch (b.type) {
    case SliceType::FlatY: return 0.5 * (dm + max_x * dl);
    case SliceType::SteepY: return 0.5 * (lc * dm + (max_y - b.mu_min) * dl);
    case SliceType::FlatX: return 0.5 * (lc * dm + (max_x - b.mu_min) * dl);
    case SliceType::SteepX: return 0.5 * (dm + max_y * dl);
    }
    return 0.0;
}

double bound_C(const BiFiltration& f1, const BiFiltration& f2, const ParamBox& b, double d_center)
{
    const double v = constant_variation(b, max_x_of(f1, f2), max_y_of(f1, f2));
    return v + d_center + v;
}

double bound_G(const BiFiltration& f1, const BiFiltration& f2, const ParamBox& b, double d_center)
{
    const double c = std::max(max_x_of(f1, f2), max_y_of(f1, f2));
    const double width = std::ldexp(1.0, -static_cast<int>(b.level));
    const double extent = is_x_type(b.type) ? max_x_of(f1, f2) : max_y_of(f1, f2);
    const bool ok = b.lambda_min >= 0.0 && b.lambda_max <= 1.0 && b.delta_lambda() == width && b.mu_min >= 0.0 &&
                    b.delta_mu() <= extent * width * (1.0 + 1e-12);
    if (!ok) {
        std::ostringstream os;
        os << "box [" << b.lambda_min << ", " << b.lambda_max << "] x [" << b.mu_min << ", " << b.mu_max
           << "] is not a level-" << b.level << " subdivision box";
        fail(ErrorCode::InvalidLevel, os.str());
    }
    return d_center + 2.0 * c * width;
}

double compute_bound(BoundKind kind, const BiFiltration& f1, const BiFiltration& f2, const ParamBox& b,
                     double d_center, std::optional<double> threshold)
{
    switch (kind) {
    case BoundKind::Global: return bound_G(f1, f2, b, d_center);
    case BoundKind::LocalConstant: return bound_C(f1, f2, b, d_center);
    case BoundKind::LocalLinear: return bound_L(f1, f2, b, d_center, threshold);
    }
    return 0.0;
}

}  // namespace matchdist
