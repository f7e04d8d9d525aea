#pragma once

#include <iosfwd>
#include <vector>

#include "matchdist/complex.hpp"

namespace matchdist {

struct DiagramPoint {
    double birth = 0.0;
    double death = 0.0;

    friend bool operator==(const DiagramPoint&, const DiagramPoint&) = default;
    friend auto operator<=>(const DiagramPoint&, const DiagramPoint&) = default;
};

/// Persistence diagram of one homology dimension. Finite points satisfy
/// birth < death; essential points (death = infinity) are stored by birth.
struct Diagram {
    int dimension = 0;
    std::vector<DiagramPoint> finite;
    std::vector<double> essential;

    /// Sorts both multisets so equal diagrams compare equal.
    void canonicalize();
    std::size_t size() const { return finite.size() + essential.size(); }

    friend bool operator==(const Diagram&, const Diagram&) = default;
};

/// Simplex indices sorted by (value, dimension, canonical index); the complex
/// stores simplices in (dimension, lexicographic) order so this realizes the
/// (value, dimension, vertex tuple) order. Only simplices of dimension <= max_dim.
std::vector<std::uint32_t> filtration_order(const MonoFiltration& m, int max_dim);

/// Dimension-0 diagram by union-find with the elder rule.
Diagram persistence_dim0(const MonoFiltration& m);

/// Diagram of the given dimension by boundary-matrix reduction over Z/2.
Diagram persistence_general(const MonoFiltration& m, int dim);

/// persistence_dim0 for dim == 0, persistence_general otherwise.
Diagram persistence(const MonoFiltration& m, int dim);

/// "# dim=<k>" header followed by one "b d" line per point, "inf" for essential deaths.
void write_diagram(std::ostream& out, const Diagram& d);

}  // namespace matchdist
