#pragma once

#include "matchdist/persistence.hpp"

namespace matchdist {

/// Bottleneck distance under the L-infinity ground metric. Unmatched points
/// pay half their persistence; essential points must be matched among
/// themselves, so the distance is infinite iff their counts differ.
///
/// The result is always one of the finitely many pairwise or diagonal costs:
/// the candidate set is searched by selection, and feasibility at a threshold
/// is decided by maximum bipartite matching. Throws DimensionMismatch.
double bottleneck_distance(const Diagram& a, const Diagram& b);

}  // namespace matchdist
