#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "matchdist/bounds.hpp"
#include "matchdist/complex.hpp"
#include "matchdist/persistence.hpp"
#include "matchdist/slice.hpp"

namespace matchdist {

enum class Mode { Absolute, Relative };
enum class Traversal { BFS, DFS, Priority };

std::string_view to_string(Traversal t);  // "bfs", "dfs", "priority"
std::optional<Traversal> traversal_from_string(std::string_view s);

struct SolverConfig {
    Mode mode = Mode::Absolute;
    double epsilon = 0.1;
    BoundKind bound = BoundKind::LocalLinear;
    int homology_dim = 0;
    Traversal traversal = Traversal::BFS;
    /// Wall-clock limit; requires Priority traversal.
    std::optional<std::chrono::milliseconds> budget;
    /// Boxes at this level are never split. Relative mode defaults to 40.
    std::optional<unsigned> max_level;
    /// Stop after this many Eval calls. Relative mode defaults to 1'000'000.
    std::optional<std::uint64_t> max_calls;
    bool trace = false;
    /// Worker threads for BFS/DFS. Results with more than one thread keep the
    /// approximation guarantee but are not reproducible call for call.
    unsigned threads = 1;
    /// Lets the local linear bound stop scanning once the box is known to need
    /// a split. Ignored when the exact bound is needed (tracing, Priority).
    bool early_exit = true;

    /// Throws InvalidConfig.
    void validate() const;
    std::optional<unsigned> effective_max_level() const;
    std::optional<std::uint64_t> effective_max_calls() const;
};

enum class StopReason { None, MaxLevel, MaxCalls, Budget };
std::string_view to_string(StopReason r);

/// One row per Eval call.
struct TraceRow {
    std::uint64_t call = 0;
    double elapsed_ms = 0.0;
    double rho = 0.0;
    /// Best upper bound on the matching distance known after this call.
    double upper = 0.0;
    /// (upper - rho) / rho, infinite while rho is zero.
    double rel_error = 0.0;
    ParamBox box;
    /// Bottleneck distance at the box center.
    double value = 0.0;
};

struct ApproxResult {
    double delta = 0.0;
    double rho = 0.0;
    double residual_upper = 0.0;
    std::uint64_t calls = 0;
    unsigned deepest_level = 0;
    unsigned deepest_evaluated_level = 0;
    bool converged = true;
    StopReason stop_reason = StopReason::None;
    /// Slice at which rho was attained.
    Slice best_slice;
    double elapsed_ms = 0.0;
    std::vector<TraceRow> trace;
};

/// The Eval primitive: bottleneck distance between the two weighted restrictions.
class Evaluator {
public:
    Evaluator(const BiFiltration& f1, const BiFiltration& f2, int homology_dim)
        : f1_(f1), f2_(f2), dim_(homology_dim)
    {}

    double operator()(const Slice& s) const;

    struct Detail {
        Diagram first, second;
        double distance;
    };
    Detail detail(const Slice& s) const;

private:
    const BiFiltration& f1_;
    const BiFiltration& f2_;
    int dim_;
};

/// Quad-tree approximation of the matching distance. Both filtrations must
/// already lie in the positive quadrant (see normalize_pair); throws
/// InvalidConfig otherwise or on a bad configuration.
///
/// Absolute mode returns delta with dmatch - eps <= delta <= dmatch; relative
/// mode returns dmatch <= delta <= (1 + eps) dmatch. When a safeguard stops a
/// run early, `converged` is false and delta falls back to an honest value:
/// rho in absolute mode, residual_upper in relative mode.
ApproxResult approximate(const BiFiltration& f1, const BiFiltration& f2, const SolverConfig& cfg);

/// Priority traversal under a wall-clock budget. The epsilon of cfg still
/// ends the run early if the queue resolves before the budget does.
ApproxResult budgeted_approximate(const BiFiltration& f1, const BiFiltration& f2, SolverConfig cfg,
                                  std::chrono::milliseconds budget);

/// 1 - calls / 4^k with k the deepest evaluated level.
double reduction_rate(const ApproxResult& r);

/// (residual_upper - rho) / rho; infinite when rho is zero.
double guaranteed_relative_error(const ApproxResult& r);

/// Header `call,elapsed_ms,rho,upper,rel_error,type,lmin,lmax,mmin,mmax,level`.
void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows);

}  // namespace matchdist
