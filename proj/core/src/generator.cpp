#include "matchdist/generator.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace matchdist {

std::uint64_t SplitMix64::below_or_equal(std::uint64_t bound)
{
    if (bound == max()) return (*this)();
    const std::uint64_t range = bound + 1;
    // Reject the top partial block of size 2^64 mod range.
    const std::uint64_t limit = max() - (max() % range + 1) % range;
    for (;;) {
        const std::uint64_t r = (*this)();
        if (r <= limit) return r % range;
    }
}

namespace {

/// C(n, k), saturating at cap.
std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap)
{
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // r < cap <= 2^32 + 1 and n < 2^32, so the product fits; the
        // quotient is C(n - k + i, i).
        r = r * (n - k + i) / i;
        if (r >= cap) return cap;
    }
    return r;
}

/// k distinct values of [0, n) by Floyd's algorithm.
std::vector<VertexId> sample_distinct(SplitMix64& rng, std::uint32_t n, std::uint32_t k)
{
    std::set<VertexId> chosen;
    for (std::uint32_t j = n - k; j < n; ++j) {
        const auto t = static_cast<VertexId>(rng.below_or_equal(j));
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    return {chosen.begin(), chosen.end()};
}

}  // namespace

void GenSpec::validate() const
{
    if (n_vertices < 1 || n_maximal < 1 || max_dim < 1)
        fail(ErrorCode::InfeasibleSpec, "vertices, maximal simplices and dimension must be at least 1");
    const std::uint64_t available = binomial_capped(n_vertices, std::uint64_t{max_dim} + 1, n_maximal + 1ULL);
    if (n_maximal > available)
        fail(ErrorCode::InfeasibleSpec, std::to_string(n_maximal) + " distinct " + std::to_string(max_dim) +
                                            "-simplices requested on " + std::to_string(n_vertices) +
                                            " vertices; only " + std::to_string(available) + " exist");
}

BiFiltration generate_random(const GenSpec& spec)
{
    spec.validate();
    SplitMix64 rng(spec.seed);

    const std::uint64_t max_attempts = 100ULL * spec.n_maximal + 1000;
    std::set<Simplex> maximal;
    std::vector<Simplex> order;
    std::uint64_t attempts = 0;
    while (maximal.size() < spec.n_maximal) {
        if (++attempts > max_attempts)
            fail(ErrorCode::InfeasibleSpec, "gave up after " + std::to_string(max_attempts) +
                                                " draws; too few distinct simplices for the request");
        Simplex s(sample_distinct(rng, spec.n_vertices, spec.max_dim + 1));
        if (maximal.insert(s).second) order.push_back(std::move(s));
    }

    // Upper-right limit each simplex must stay below, tightened by its cofaces.
    const double range = spec.coord_range;
    std::map<Simplex, Point2> cap;
    std::map<Simplex, Point2> value;
    for (const Simplex& s : order) {
        value[s] = {static_cast<double>(rng.below_or_equal(spec.coord_range)),
                    static_cast<double>(rng.below_or_equal(spec.coord_range))};
    }
    auto tighten = [&](const Simplex& s, const Point2& p) {
        for (Simplex& f : s.facets()) {
            auto [it, fresh] = cap.try_emplace(std::move(f), p);
            if (!fresh) it->second = {std::min(it->second.x, p.x), std::min(it->second.y, p.y)};
        }
    };
    for (const auto& [s, p] : value) tighten(s, p);

    for (int d = static_cast<int>(spec.max_dim) - 1; d >= 0; --d) {
        // Collect this dimension first: tighten() inserts lower-dimensional keys.
        std::vector<std::pair<Simplex, Point2>> layer;
        for (const auto& [s, c] : cap)
            if (s.dimension() == d) layer.emplace_back(s, c);
        for (const auto& [s, c] : layer) {
            const Point2 p{static_cast<double>(rng.below_or_equal(static_cast<std::uint64_t>(std::min(c.x, range)))),
                           static_cast<double>(rng.below_or_equal(static_cast<std::uint64_t>(std::min(c.y, range))))};
            value[s] = p;
            tighten(s, p);
        }
    }

    std::vector<RawSimplex> raw;
    raw.reserve(value.size());
    for (const auto& [s, p] : value) raw.push_back({{s.vertices().begin(), s.vertices().end()}, {p}});
    return validate_bifiltration(std::move(raw));
}

}  // namespace matchdist
