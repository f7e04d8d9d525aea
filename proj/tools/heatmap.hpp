#pragma once

#include <array>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "matchdist/complex.hpp"
#include "matchdist/slice.hpp"

namespace matchdist::cli {

using Grid = std::vector<std::vector<double>>;

/// Bottleneck distances at the centers of all level-k boxes.
/// cells[type][mu bucket][lambda bucket], types in canonical order.
struct HeatmapGrid {
    unsigned depth = 0;
    std::array<Grid, 4> cells;
};

inline constexpr unsigned kMaxHeatmapDepth = 10;

/// Throws DepthTooLarge above kMaxHeatmapDepth. Both filtrations must lie in
/// the positive quadrant.
HeatmapGrid compute_heatmap(const BiFiltration& f1, const BiFiltration& f2, unsigned depth, int homology_dim);

/// 2^(k+1) square composite. Left columns are flat slices with lambda
/// ascending, right columns steep slices with lambda descending, so the two
/// meet at slope one. Top rows are x-slices with mu descending, bottom rows
/// y-slices with mu ascending, so they meet at lines through the origin.
Grid glue(const HeatmapGrid& h);

/// `# type=<name> depth=<k>` followed by one comma-separated line per row.
void write_grid_csv(std::ostream& out, std::string_view name, unsigned depth, const Grid& g);

}  // namespace matchdist::cli
