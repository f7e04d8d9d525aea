#include "matchdist/slice.hpp"

#include <algorithm>

namespace matchdist {

std::string_view to_string(SliceType t)
{
    switch (t) {
    case SliceType::FlatX: return "flat_x";
    case SliceType::SteepX: return "steep_x";
    case SliceType::FlatY: return "flat_y";
    case SliceType::SteepY: return "steep_y";
    }
    return "unknown";
}

std::optional<SliceType> slice_type_from_string(std::string_view s)
{
    for (SliceType t : kSliceTypes)
        if (to_string(t) == s) return t;
    return std::nullopt;
}

MonoFiltration restrict(const BiFiltration& f, const Slice& L)
{
    const SimplicialComplex& k = f.complex();
    std::vector<double> values(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto pts = f.critical(i).points();
        double v = weighted_push(pts[0], L);
        for (std::size_t j = 1; j < pts.size(); ++j) v = std::min(v, weighted_push(pts[j], L));
        // Simplices are stored faces-first, so one pass lifts any value that
        // rounding pushed below a face's value. In exact arithmetic this is a no-op.
        for (std::uint32_t face : k.facets(i)) v = std::max(v, values[face]);
        values[i] = v;
    }
    return MonoFiltration::trusted(f.shared_complex(), std::move(values));
}

std::array<ParamBox, 4> initial_boxes(double max_x, double max_y)
{
    std::array<ParamBox, 4> out;
    for (std::size_t i = 0; i < kSliceTypes.size(); ++i) {
        SliceType t = kSliceTypes[i];
        out[i] = ParamBox{0.0, 1.0, 0.0, is_x_type(t) ? max_x : max_y, t, 0};
    }
    return out;
}

std::array<ParamBox, 4> initial_boxes(const BiFiltration& f1, const BiFiltration& f2)
{
    return initial_boxes(std::max(f1.max_x(), f2.max_x()), std::max(f1.max_y(), f2.max_y()));
}

std::array<ParamBox, 4> subdivide(const ParamBox& b)
{
    if (b.delta_lambda() <= 0.0 && b.delta_mu() <= 0.0) fail(ErrorCode::DegenerateBox, "cannot split a point");
    const double lc = 0.5 * (b.lambda_min + b.lambda_max);
    const double mc = 0.5 * (b.mu_min + b.mu_max);
    const unsigned lv = b.level + 1;
    return {{
        {b.lambda_min, lc, b.mu_min, mc, b.type, lv},
        {lc, b.lambda_max, b.mu_min, mc, b.type, lv},
        {b.lambda_min, lc, mc, b.mu_max, b.type, lv},
        {lc, b.lambda_max, mc, b.mu_max, b.type, lv},
    }};
}

Slice center(const ParamBox& b)
{
    return {0.5 * (b.lambda_min + b.lambda_max), 0.5 * (b.mu_min + b.mu_max), b.type};
}

std::array<Slice, 4> corners(const ParamBox& b)
{
    return {{
        {b.lambda_min, b.mu_min, b.type},
        {b.lambda_max, b.mu_min, b.type},
        {b.lambda_min, b.mu_max, b.type},
        {b.lambda_max, b.mu_max, b.type},
    }};
}

}  // namespace matchdist
