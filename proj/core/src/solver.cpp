#include "matchdist/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <condition_variable>
#include <deque>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <queue>
#include <set>
#include <thread>

#include "matchdist/bottleneck.hpp"
#include "matchdist/io.hpp"

namespace matchdist {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr unsigned kRelativeMaxLevel = 40;
constexpr std::uint64_t kRelativeMaxCalls = 1'000'000;

using Clock = std::chrono::steady_clock;

double elapsed_ms_since(Clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

double relative_error(double upper, double rho)
{
    if (rho > 0.0) return (upper - rho) / rho;
    return upper > 0.0 ? kInf : 0.0;
}

/// Bookkeeping shared by both drivers.
struct Progress {
    const SolverConfig& cfg;
    Clock::time_point start = Clock::now();
    double rho = 0.0;
    Slice best{};
    std::uint64_t calls = 0;
    unsigned deepest_level = 0;
    unsigned deepest_evaluated = 0;
    double pruned_max = 0.0;
    double unresolved_max = -kInf;
    StopReason reason = StopReason::None;
    std::vector<TraceRow> trace;

    explicit Progress(const SolverConfig& c) : cfg(c) {}

    double threshold() const { return cfg.mode == Mode::Absolute ? rho + cfg.epsilon : (1.0 + cfg.epsilon) * rho; }

    void record_eval(const ParamBox& box, const Slice& c, double d)
    {
        ++calls;
        if (d > rho) {
            rho = d;
            best = c;
        }
        deepest_evaluated = std::max(deepest_evaluated, box.level);
    }

    void add_row(const ParamBox& box, double value, double upper)
    {
        if (!cfg.trace) return;
        upper = std::max({upper, rho, pruned_max, unresolved_max});
        trace.push_back({calls, elapsed_ms_since(start), rho, upper, relative_error(upper, rho), box, value});
    }

    ApproxResult finish(bool stopped, double leftover_upper)
    {
        ApproxResult r;
        r.rho = rho;
        r.calls = calls;
        r.deepest_level = deepest_level;
        r.deepest_evaluated_level = deepest_evaluated;
        r.best_slice = best;
        r.converged = !stopped && unresolved_max == -kInf;
        r.stop_reason = reason;
        if (r.converged) {
            r.residual_upper = cfg.mode == Mode::Absolute ? rho + cfg.epsilon : (1.0 + cfg.epsilon) * rho;
            r.delta = cfg.mode == Mode::Absolute ? rho : (1.0 + cfg.epsilon) * rho;
        } else {
            r.residual_upper = std::max({rho, pruned_max, unresolved_max, leftover_upper});
            r.delta = cfg.mode == Mode::Absolute ? rho : r.residual_upper;
        }
        r.elapsed_ms = elapsed_ms_since(start);
        r.trace = std::move(trace);
        return r;
    }
};

void check_positive_quadrant(const BiFiltration& f, const char* which)
{
    if (f.size() > 0 && (f.min_x() < 0.0 || f.min_y() < 0.0))
        fail(ErrorCode::InvalidConfig, std::string(which) + " filtration has negative coordinates; normalize first");
}

// ---------------------------------------------------------------------------
// BFS / DFS: boxes are evaluated when popped.
// ---------------------------------------------------------------------------

struct Pending {
    ParamBox box;
    /// Valid upper bound over this box: the parent's bound (infinite for roots).
    double cover = kInf;
    /// False when the parent's bound was cut short by the early exit.
    bool cover_exact = true;
    ParamBox parent{};
    double parent_center = 0.0;
};

ApproxResult run_tree(const BiFiltration& f1, const BiFiltration& f2, const SolverConfig& cfg)
{
    Progress st(cfg);
    const Evaluator eval(f1, f2, cfg.homology_dim);
    const auto max_level = cfg.effective_max_level();
    const auto max_calls = cfg.effective_max_calls();
    const bool exact_bounds = cfg.trace || !cfg.early_exit || cfg.bound != BoundKind::LocalLinear;
    const bool lifo = cfg.traversal == Traversal::DFS;

    std::deque<Pending> frontier;
    std::multiset<double> covers;  // covers of queued and in-flight boxes, for trace rows
    auto push = [&](Pending p) {
        st.deepest_level = std::max(st.deepest_level, p.box.level);
        if (cfg.trace) covers.insert(p.cover);
        frontier.push_back(std::move(p));
    };
    auto push_all = [&](const std::array<ParamBox, 4>& boxes, double cover, bool exact, const ParamBox& parent,
                        double parent_center) {
        // LIFO pops the last push first; reverse so the first child is explored first.
        if (lifo) {
            for (std::size_t i = boxes.size(); i-- > 0;) push({boxes[i], cover, exact, parent, parent_center});
        } else {
            for (const ParamBox& b : boxes) push({b, cover, exact, parent, parent_center});
        }
    };
    push_all(initial_boxes(f1, f2), kInf, true, ParamBox{}, 0.0);

    std::mutex mutex;
    std::condition_variable cv;
    unsigned active = 0;
    std::uint64_t started = 0;
    bool stopped = false;
    std::exception_ptr error;

    auto worker = [&] {
        std::unique_lock lock(mutex);
        for (;;) {
            if (!stopped && max_calls && started >= *max_calls && !frontier.empty()) {
                stopped = true;
                st.reason = StopReason::MaxCalls;
            }
            if (stopped || frontier.empty()) {
                if (stopped || active == 0) {
                    cv.notify_all();
                    return;
                }
                cv.wait(lock);
                continue;
            }
            Pending item;
            if (lifo) {
                item = std::move(frontier.back());
                frontier.pop_back();
            } else {
                item = std::move(frontier.front());
                frontier.pop_front();
            }
            ++active;
            ++started;
            lock.unlock();

            try {
                const Slice c = center(item.box);
                const double d = eval(c);

                lock.lock();
                st.record_eval(item.box, c, d);
                double threshold = st.threshold();
                lock.unlock();

                double bound = compute_bound(cfg.bound, f1, f2, item.box, d,
                                             exact_bounds ? std::nullopt : std::optional<double>(threshold));
                bool exact = exact_bounds || !(bound > threshold);

                lock.lock();
                threshold = st.threshold();
                if (!exact && !(bound > threshold)) {
                    // rho grew meanwhile; a truncated value cannot justify pruning.
                    bound = compute_bound(cfg.bound, f1, f2, item.box, d);
                    exact = true;
                }
                if (bound > threshold) {
                    if (max_level && item.box.level >= *max_level) {
                        if (!exact) bound = compute_bound(cfg.bound, f1, f2, item.box, d);
                        st.unresolved_max = std::max(st.unresolved_max, bound);
                        st.reason = StopReason::MaxLevel;
                    } else {
                        push_all(subdivide(item.box), bound, exact, item.box, d);
                    }
                } else {
                    st.pruned_max = std::max(st.pruned_max, bound);
                }
                if (cfg.trace) {
                    covers.erase(covers.find(item.cover));
                    st.add_row(item.box, d, covers.empty() ? -kInf : *covers.rbegin());
                }
            } catch (...) {
                if (!lock.owns_lock()) lock.lock();
                if (!error) error = std::current_exception();
                stopped = true;
            }
            --active;
            cv.notify_all();
        }
    };

    if (cfg.threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(cfg.threads);
        for (unsigned i = 0; i < cfg.threads; ++i) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);

    double leftover = -kInf;
    for (const Pending& p : frontier) {
        double cover = p.cover;
        if (!p.cover_exact) cover = compute_bound(cfg.bound, f1, f2, p.parent, p.parent_center);
        leftover = std::max(leftover, cover);
    }
    return st.finish(stopped, leftover);
}

// ---------------------------------------------------------------------------
// Priority: boxes are evaluated when created and popped by largest bound.
// ---------------------------------------------------------------------------

struct Ranked {
    double bound;
    std::uint64_t seq;
    ParamBox box;
};

struct RankedOrder {
    bool operator()(const Ranked& a, const Ranked& b) const
    {
        if (a.bound != b.bound) return a.bound < b.bound;
        return a.seq > b.seq;  // equal bounds pop in insertion order
    }
};

ApproxResult run_priority(const BiFiltration& f1, const BiFiltration& f2, const SolverConfig& cfg)
{
    Progress st(cfg);
    const Evaluator eval(f1, f2, cfg.homology_dim);
    const auto max_level = cfg.effective_max_level();
    const auto max_calls = cfg.effective_max_calls();
    std::priority_queue<Ranked, std::vector<Ranked>, RankedOrder> heap;
    std::uint64_t seq = 0;

    // A child's own bound and its parent's bound both cover it; keeping the
    // smaller makes the queue maximum non-increasing.
    auto evaluate = [&](const ParamBox& box, double cover, double pending_cover) {
        st.deepest_level = std::max(st.deepest_level, box.level);
        const Slice c = center(box);
        const double d = eval(c);
        st.record_eval(box, c, d);
        const double bound = std::min(compute_bound(cfg.bound, f1, f2, box, d), cover);
        if (bound > st.threshold()) {
            heap.push({bound, seq++, box});
        } else {
            st.pruned_max = std::max(st.pruned_max, bound);
        }
        st.add_row(box, d, std::max(pending_cover, heap.empty() ? -kInf : heap.top().bound));
    };

    const auto roots = initial_boxes(f1, f2);
    for (std::size_t i = 0; i < roots.size(); ++i) evaluate(roots[i], kInf, i + 1 < roots.size() ? kInf : -kInf);

    bool stopped = false;
    while (!heap.empty()) {
        if (heap.top().bound <= st.threshold()) {
            st.pruned_max = std::max(st.pruned_max, heap.top().bound);
            heap = {};
            break;
        }
        if (cfg.budget && elapsed_ms_since(st.start) >= static_cast<double>(cfg.budget->count())) {
            stopped = true;
            st.reason = StopReason::Budget;
            break;
        }
        if (max_calls && st.calls >= *max_calls) {
            stopped = true;
            st.reason = StopReason::MaxCalls;
            break;
        }
        Ranked top = heap.top();
        heap.pop();
        if (max_level && top.box.level >= *max_level) {
            st.unresolved_max = std::max(st.unresolved_max, top.bound);
            st.reason = StopReason::MaxLevel;
            continue;
        }
        const auto children = subdivide(top.box);
        for (std::size_t i = 0; i < children.size(); ++i)
            evaluate(children[i], top.bound, i + 1 < children.size() ? top.bound : -kInf);
    }
    return st.finish(stopped, heap.empty() ? -kInf : heap.top().bound);
}

}  // namespace

std::string_view to_string(Traversal t)
{
    switch (t) {
    case Traversal::BFS: return "bfs";
    case Traversal::DFS: return "dfs";
    case Traversal::Priority: return "priority";
    }
    return "?";
}

std::optional<Traversal> traversal_from_string(std::string_view s)
{
    if (s == "bfs") return Traversal::BFS;
    if (s == "dfs") return Traversal::DFS;
    if (s == "priority") return Traversal::Priority;
    return std::nullopt;
}

std::string_view to_string(StopReason r)
{
    switch (r) {
    case StopReason::None: return "none";
    case StopReason::MaxLevel: return "max_level";
    case StopReason::MaxCalls: return "max_calls";
    case StopReason::Budget: return "budget";
    }
    return "?";
}

void SolverConfig::validate() const
{
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) fail(ErrorCode::InvalidConfig, "epsilon must be positive");
    if (homology_dim < 0) fail(ErrorCode::InvalidConfig, "homology dimension must be non-negative");
    if (budget && traversal != Traversal::Priority)
        fail(ErrorCode::InvalidConfig, "a time budget requires priority traversal");
    if (budget && budget->count() < 0) fail(ErrorCode::InvalidConfig, "negative budget");
    if (threads == 0) fail(ErrorCode::InvalidConfig, "threads must be at least 1");
    if (threads > 1 && traversal == Traversal::Priority)
        fail(ErrorCode::InvalidConfig, "priority traversal runs on a single thread");
}

std::optional<unsigned> SolverConfig::effective_max_level() const
{
    if (max_level) return max_level;
    if (mode == Mode::Relative) return kRelativeMaxLevel;
    return std::nullopt;
}

std::optional<std::uint64_t> SolverConfig::effective_max_calls() const
{
    if (max_calls) return max_calls;
    if (mode == Mode::Relative) return kRelativeMaxCalls;
    return std::nullopt;
}

double Evaluator::operator()(const Slice& s) const
{
    return bottleneck_distance(persistence(restrict(f1_, s), dim_), persistence(restrict(f2_, s), dim_));
}

Evaluator::Detail Evaluator::detail(const Slice& s) const
{
    Detail out{persistence(restrict(f1_, s), dim_), persistence(restrict(f2_, s), dim_), 0.0};
    out.distance = bottleneck_distance(out.first, out.second);
    return out;
}

ApproxResult approximate(const BiFiltration& f1, const BiFiltration& f2, const SolverConfig& cfg)
{
    cfg.validate();
    check_positive_quadrant(f1, "first");
    check_positive_quadrant(f2, "second");
    return cfg.traversal == Traversal::Priority ? run_priority(f1, f2, cfg) : run_tree(f1, f2, cfg);
}

ApproxResult budgeted_approximate(const BiFiltration& f1, const BiFiltration& f2, SolverConfig cfg,
                                  std::chrono::milliseconds budget)
{
    cfg.traversal = Traversal::Priority;
    cfg.budget = budget;
    cfg.threads = 1;
    return approximate(f1, f2, cfg);
}

double reduction_rate(const ApproxResult& r)
{
    return 1.0 - static_cast<double>(r.calls) / std::ldexp(1.0, 2 * static_cast<int>(r.deepest_evaluated_level));
}

double guaranteed_relative_error(const ApproxResult& r)
{
    return relative_error(r.residual_upper, r.rho);
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows)
{
    out << "call,elapsed_ms,rho,upper,rel_error,type,lmin,lmax,mmin,mmax,level\n";
    for (const TraceRow& t : rows) {
        out << t.call << ',' << io::format_double(t.elapsed_ms) << ',' << io::format_double(t.rho) << ','
            << io::format_double(t.upper) << ',' << io::format_double(t.rel_error) << ',' << to_string(t.box.type)
            << ',' << io::format_double(t.box.lambda_min) << ',' << io::format_double(t.box.lambda_max) << ','
            << io::format_double(t.box.mu_min) << ',' << io::format_double(t.box.mu_max) << ',' << t.box.level
            << '\n';
    }
}

}  // namespace matchdist
