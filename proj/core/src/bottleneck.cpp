#include "matchdist/bottleneck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace matchdist {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint32_t kFree = std::numeric_limits<std::uint32_t>::max();

/// Hopcroft-Karp on explicit adjacency lists; returns the matching size.
class HopcroftKarp {
public:
    HopcroftKarp(const std::vector<std::vector<std::uint32_t>>& adj, std::size_t n_right)
        : adj_(adj), match_left_(adj.size(), kFree), match_right_(n_right, kFree), dist_(adj.size())
    {}

    std::size_t run()
    {
        std::size_t size = 0;
        // Greedy start; most thresholds are decided here.
        for (std::uint32_t l = 0; l < adj_.size(); ++l)
            for (std::uint32_t r : adj_[l])
                if (match_right_[r] == kFree) {
                    match_left_[l] = r;
                    match_right_[r] = l;
                    ++size;
                    break;
                }
        while (bfs())
            for (std::uint32_t l = 0; l < adj_.size(); ++l)
                if (match_left_[l] == kFree && dfs(l)) ++size;
        return size;
    }

private:
    bool bfs()
    {
        std::queue<std::uint32_t> q;
        bool found = false;
        for (std::uint32_t l = 0; l < adj_.size(); ++l) {
            if (match_left_[l] == kFree) {
                dist_[l] = 0;
                q.push(l);
            } else {
                dist_[l] = kFree;
            }
        }
        while (!q.empty()) {
            std::uint32_t l = q.front();
            q.pop();
            for (std::uint32_t r : adj_[l]) {
                std::uint32_t next = match_right_[r];
                if (next == kFree) {
                    found = true;
                } else if (dist_[next] == kFree) {
                    dist_[next] = dist_[l] + 1;
                    q.push(next);
                }
            }
        }
        return found;
    }

    bool dfs(std::uint32_t l)
    {
        for (std::uint32_t r : adj_[l]) {
            std::uint32_t next = match_right_[r];
            if (next == kFree || (dist_[next] == dist_[l] + 1 && dfs(next))) {
                match_left_[l] = r;
                match_right_[r] = l;
                return true;
            }
        }
        dist_[l] = kFree;
        return false;
    }

    const std::vector<std::vector<std::uint32_t>>& adj_;
    std::vector<std::uint32_t> match_left_;
    std::vector<std::uint32_t> match_right_;
    std::vector<std::uint32_t> dist_;
};

/// Finite-point matching problem with a precomputed cost matrix.
class FiniteMatcher {
public:
    FiniteMatcher(const std::vector<DiagramPoint>& a, const std::vector<DiagramPoint>& b)
        : na_(a.size()), nb_(b.size()), cost_(na_ * nb_), half_a_(na_), half_b_(nb_)
    {
        for (std::size_t i = 0; i < na_; ++i) {
            half_a_[i] = (a[i].death - a[i].birth) / 2;
            for (std::size_t j = 0; j < nb_; ++j)
                cost_[i * nb_ + j] = std::max(std::abs(a[i].birth - b[j].birth), std::abs(a[i].death - b[j].death));
        }
        for (std::size_t j = 0; j < nb_; ++j) half_b_[j] = (b[j].death - b[j].birth) / 2;
    }

    /// Every value the optimum can take.
    std::vector<double> candidates() const
    {
        std::vector<double> c;
        c.reserve(cost_.size() + na_ + nb_);
        c.insert(c.end(), cost_.begin(), cost_.end());
        c.insert(c.end(), half_a_.begin(), half_a_.end());
        c.insert(c.end(), half_b_.begin(), half_b_.end());
        return c;
    }

    /// A matching of cost <= t exists iff some matching saturates the points
    /// that cannot go to the diagonal. Such a matching exists iff one saturates
    /// those of each side separately (Mendelsohn-Dulmage), so two one-sided
    /// maximum matchings decide feasibility.
    bool feasible(double t) const
    {
        std::vector<std::vector<std::uint32_t>> adj;
        for (std::size_t i = 0; i < na_; ++i) {
            if (half_a_[i] <= t) continue;
            auto& row = adj.emplace_back();
            for (std::size_t j = 0; j < nb_; ++j)
                if (cost_[i * nb_ + j] <= t) row.push_back(static_cast<std::uint32_t>(j));
            if (row.empty()) return false;
        }
        if (!adj.empty() && HopcroftKarp(adj, nb_).run() < adj.size()) return false;

        adj.clear();
        for (std::size_t j = 0; j < nb_; ++j) {
            if (half_b_[j] <= t) continue;
            auto& row = adj.emplace_back();
            for (std::size_t i = 0; i < na_; ++i)
                if (cost_[i * nb_ + j] <= t) row.push_back(static_cast<std::uint32_t>(i));
            if (row.empty()) return false;
        }
        return adj.empty() || HopcroftKarp(adj, na_).run() == adj.size();
    }

private:
    std::size_t na_, nb_;
    std::vector<double> cost_;
    std::vector<double> half_a_, half_b_;
};

double essential_cost(std::vector<double> a, std::vector<double> b)
{
    if (a.size() != b.size()) return kInf;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace

double bottleneck_distance(const Diagram& a, const Diagram& b)
{
    if (a.dimension != b.dimension)
        fail(ErrorCode::DimensionMismatch, "diagrams of dimensions " + std::to_string(a.dimension) + " and " +
                                               std::to_string(b.dimension));
    const double floor = essential_cost(a.essential, b.essential);
    if (std::isinf(floor)) return kInf;
    if (a.finite.empty() && b.finite.empty()) return floor;

    FiniteMatcher matcher(a.finite, b.finite);
    // Anything below the essential cost cannot change the answer; the floor
    // itself stands in for all of them.
    std::vector<double> cand = matcher.candidates();
    std::erase_if(cand, [&](double c) { return c < floor; });
    cand.push_back(floor);

    // Selection-based binary search: the answer always lies in cand[lo, hi).
    std::size_t lo = 0, hi = cand.size();
    while (hi - lo > 1) {
        std::size_t mid = lo + (hi - lo - 1) / 2;
        std::nth_element(cand.begin() + static_cast<std::ptrdiff_t>(lo), cand.begin() + static_cast<std::ptrdiff_t>(mid),
                         cand.begin() + static_cast<std::ptrdiff_t>(hi));
        if (matcher.feasible(cand[mid])) {
            hi = mid + 1;
        } else {
            lo = mid + 1;
        }
    }
    // The range [lo, hi) was partitioned around earlier pivots; its sole element is the minimum feasible one.
    return cand[lo];
}

}  // namespace matchdist
