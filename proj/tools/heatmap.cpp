#include "heatmap.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "matchdist/io.hpp"
#include "matchdist/solver.hpp"

namespace matchdist::cli {

HeatmapGrid compute_heatmap(const BiFiltration& f1, const BiFiltration& f2, unsigned depth, int homology_dim)
{
    if (depth > kMaxHeatmapDepth)
        fail(ErrorCode::DepthTooLarge,
             "depth " + std::to_string(depth) + " exceeds " + std::to_string(kMaxHeatmapDepth));
    const Evaluator eval(f1, f2, homology_dim);
    const std::size_t n = std::size_t{1} << depth;
    const double width = std::ldexp(1.0, -static_cast<int>(depth));

    HeatmapGrid h;
    h.depth = depth;
    const auto roots = initial_boxes(f1, f2);
    for (std::size_t t = 0; t < roots.size(); ++t) {
        const ParamBox& root = roots[t];
        Grid& g = h.cells[t];
        g.assign(n, std::vector<double>(n, 0.0));
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < n; ++i) {
                ParamBox b = root;
                b.level = depth;
                b.lambda_min = static_cast<double>(i) * width;
                b.lambda_max = static_cast<double>(i + 1) * width;
                b.mu_min = root.mu_max * static_cast<double>(j) * width;
                b.mu_max = root.mu_max * static_cast<double>(j + 1) * width;
                g[j][i] = eval(center(b));
            }
        }
    }
    return h;
}

Grid glue(const HeatmapGrid& h)
{
    const std::size_t n = std::size_t{1} << h.depth;
    auto at = [&](SliceType t) -> const Grid& { return h.cells[static_cast<std::size_t>(t)]; };
    Grid out(2 * n, std::vector<double>(2 * n, 0.0));
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t mu_x = n - 1 - r;  // top half: mu descending
        const std::size_t mu_y = r;          // bottom half: mu ascending
        for (std::size_t c = 0; c < n; ++c) {
            const std::size_t steep = n - 1 - c;
            out[r][c] = at(SliceType::FlatX)[mu_x][c];
            out[r][n + c] = at(SliceType::SteepX)[mu_x][steep];
            out[n + r][c] = at(SliceType::FlatY)[mu_y][c];
            out[n + r][n + c] = at(SliceType::SteepY)[mu_y][steep];
        }
    }
    return out;
}

void write_grid_csv(std::ostream& out, std::string_view name, unsigned depth, const Grid& g)
{
    out << "# type=" << name << " depth=" << depth << '\n';
    for (const auto& row : g) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << io::format_double(row[i]);
        out << '\n';
    }
}

}  // namespace matchdist::cli
