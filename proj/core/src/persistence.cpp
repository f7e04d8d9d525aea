#include "matchdist/persistence.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "matchdist/io.hpp"

namespace matchdist {

void Diagram::canonicalize()
{
    std::sort(finite.begin(), finite.end());
    std::sort(essential.begin(), essential.end());
}

std::vector<std::uint32_t> filtration_order(const MonoFiltration& m, int max_dim)
{
    const SimplicialComplex& k = m.complex();
    std::vector<std::uint32_t> order;
    order.reserve(k.size());
    for (std::size_t i = 0; i < k.size(); ++i)
        if (k.dimension(i) <= max_dim) order.push_back(static_cast<std::uint32_t>(i));
    // Canonical index order already sorts by dimension first.
    auto values = m.values();
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (values[a] != values[b]) return values[a] < values[b];
        return a < b;
    });
    return order;
}

namespace {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n)
    {
        std::iota(parent_.begin(), parent_.end(), 0u);
    }

    std::uint32_t find(std::uint32_t x)
    {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void attach(std::uint32_t child_root, std::uint32_t parent_root) { parent_[child_root] = parent_root; }

private:
    std::vector<std::uint32_t> parent_;
};

}  // namespace

Diagram persistence_dim0(const MonoFiltration& m)
{
    const SimplicialComplex& k = m.complex();
    Diagram d;
    d.dimension = 0;

    std::vector<std::uint32_t> order = filtration_order(m, 1);
    // rank[i] = position of simplex i in the filtration; a root's rank is
    // its creator's rank, so the smaller rank is the elder component.
    std::vector<std::uint32_t> rank(k.size(), 0);
    for (std::uint32_t pos = 0; pos < order.size(); ++pos) rank[order[pos]] = pos;

    UnionFind uf(k.size());
    for (std::uint32_t s : order) {
        if (k.dimension(s) != 1) continue;
        auto ends = k.facets(s);
        std::uint32_t a = uf.find(ends[0]);
        std::uint32_t b = uf.find(ends[1]);
        if (a == b) continue;
        if (rank[a] < rank[b]) std::swap(a, b);  // a is now the younger root
        double birth = m.value(a);
        double death = m.value(s);
        if (birth < death) d.finite.push_back({birth, death});
        uf.attach(a, b);
    }
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (k.dimension(i) != 0) continue;
        if (uf.find(static_cast<std::uint32_t>(i)) == i) d.essential.push_back(m.value(i));
    }
    d.canonicalize();
    return d;
}

Diagram persistence_general(const MonoFiltration& m, int dim)
{
    const SimplicialComplex& k = m.complex();
    Diagram d;
    d.dimension = dim;
    if (dim < 0) fail(ErrorCode::InvalidConfig, "negative homology dimension");

    std::vector<std::uint32_t> order = filtration_order(m, dim + 1);
    std::vector<std::int64_t> position(k.size(), -1);
    for (std::size_t p = 0; p < order.size(); ++p) position[order[p]] = static_cast<std::int64_t>(p);

    // Columns hold sorted row positions; low(j) = back().
    const std::size_t n = order.size();
    std::vector<std::vector<std::uint32_t>> columns(n);
    std::vector<std::int64_t> column_with_low(n, -1);
    std::vector<bool> is_paired(n, false);
    std::vector<std::uint32_t> scratch;

    for (std::size_t j = 0; j < n; ++j) {
        std::uint32_t s = order[j];
        int sd = k.dimension(s);
        if (sd == 0 || sd < dim) continue;  // vertices and too-low simplices have no relevant boundary
        auto& col = columns[j];
        for (std::uint32_t f : k.facets(s)) col.push_back(static_cast<std::uint32_t>(position[f]));
        std::sort(col.begin(), col.end());
        while (!col.empty()) {
            std::int64_t other = column_with_low[col.back()];
            if (other < 0) break;
            // col += columns[other] over Z/2 (symmetric difference of sorted lists).
            scratch.clear();
            std::set_symmetric_difference(col.begin(), col.end(), columns[other].begin(), columns[other].end(),
                                          std::back_inserter(scratch));
            col.swap(scratch);
        }
        if (!col.empty()) {
            std::uint32_t low = col.back();
            column_with_low[low] = static_cast<std::int64_t>(j);
            is_paired[low] = true;
            is_paired[j] = true;
            if (sd == dim + 1) {
                double birth = m.value(order[low]);
                double death = m.value(s);
                if (birth < death) d.finite.push_back({birth, death});
            }
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        std::uint32_t s = order[j];
        if (k.dimension(s) == dim && columns[j].empty() && !is_paired[j]) d.essential.push_back(m.value(s));
    }
    d.canonicalize();
    return d;
}

Diagram persistence(const MonoFiltration& m, int dim)
{
    return dim == 0 ? persistence_dim0(m) : persistence_general(m, dim);
}

void write_diagram(std::ostream& out, const Diagram& d)
{
    out << "# dim=" << d.dimension << '\n';
    for (const DiagramPoint& p : d.finite) out << io::format_double(p.birth) << ' ' << io::format_double(p.death) << '\n';
    for (double b : d.essential) out << io::format_double(b) << " inf\n";
}

}  // namespace matchdist
