#include <gtest/gtest.h>

#include <sstream>

#include "support.hpp"

using namespace matchdist;
using mdtest::Rng;

namespace {

NormalizedPair small_pair(Rng& rng, std::uint32_t range = 16)
{
    return normalize_pair(mdtest::random_one_critical(rng, 6, 6, 1, range),
                          mdtest::random_one_critical(rng, 6, 6, 1, range));
}

ErrorCode config_error(SolverConfig cfg)
{
    try {
        cfg.validate();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::IoError;
}

}  // namespace

TEST(Solver, AbsoluteSandwich)
{
    Rng rng(51);
    for (int trial = 0; trial < 8; ++trial) {
        const auto p = small_pair(rng);
        const double oracle = mdtest::sampled_matching_distance(p.first, p.second, 0, 24);
        for (BoundKind kind : {BoundKind::Global, BoundKind::LocalConstant, BoundKind::LocalLinear}) {
            SolverConfig cfg;
            cfg.epsilon = 0.5;
            cfg.bound = kind;
            const ApproxResult r = approximate(p.first, p.second, cfg);
            EXPECT_TRUE(r.converged);
            EXPECT_EQ(r.delta, r.rho);
            EXPECT_GE(r.delta + cfg.epsilon, oracle - 1e-9);
            EXPECT_EQ(Evaluator(p.first, p.second, 0)(r.best_slice), r.rho);
            EXPECT_LE(r.deepest_level,
                      mdtest::level_cap(std::max(p.first.c_max(), p.second.c_max()), cfg.epsilon));
        }
    }
}

TEST(Solver, RelativeSandwich)
{
    Rng rng(52);
    for (int trial = 0; trial < 8; ++trial) {
        const auto p = small_pair(rng);
        const double oracle = mdtest::sampled_matching_distance(p.first, p.second, 0, 24);
        SolverConfig cfg;
        cfg.mode = Mode::Relative;
        cfg.epsilon = 0.2;
        const ApproxResult r = approximate(p.first, p.second, cfg);
        if (oracle == 0.0) continue;
        ASSERT_TRUE(r.converged);
        EXPECT_GE(r.delta, oracle - 1e-9);
        EXPECT_LE(r.delta, (1 + cfg.epsilon) * r.rho);
    }
}

TEST(Solver, BoundsRankByCallCount)
{
    Rng rng(53);
    std::uint64_t g = 0, c = 0, l = 0;
    for (int trial = 0; trial < 6; ++trial) {
        const auto p = small_pair(rng, 64);
        SolverConfig cfg;
        cfg.epsilon = 1.0;
        cfg.bound = BoundKind::Global;
        g += approximate(p.first, p.second, cfg).calls;
        cfg.bound = BoundKind::LocalConstant;
        c += approximate(p.first, p.second, cfg).calls;
        cfg.bound = BoundKind::LocalLinear;
        l += approximate(p.first, p.second, cfg).calls;
    }
    EXPECT_GE(g, c);
    EXPECT_GE(c, l);
}

TEST(Solver, TraversalsShareTheGuarantee)
{
    Rng rng(54);
    const auto p = small_pair(rng);
    SolverConfig cfg;
    cfg.epsilon = 0.25;
    std::vector<double> deltas;
    for (Traversal t : {Traversal::BFS, Traversal::DFS, Traversal::Priority}) {
        cfg.traversal = t;
        const ApproxResult r = approximate(p.first, p.second, cfg);
        EXPECT_TRUE(r.converged) << to_string(t);
        deltas.push_back(r.delta);
    }
    const auto [lo, hi] = std::minmax_element(deltas.begin(), deltas.end());
    EXPECT_LE(*hi - *lo, cfg.epsilon);
}

TEST(Solver, ThreadsKeepTheGuarantee)
{
    Rng rng(55);
    const auto p = small_pair(rng);
    SolverConfig cfg;
    cfg.epsilon = 0.25;
    const ApproxResult one = approximate(p.first, p.second, cfg);
    cfg.threads = 3;
    const ApproxResult many = approximate(p.first, p.second, cfg);
    EXPECT_TRUE(many.converged);
    EXPECT_LE(std::abs(one.delta - many.delta), cfg.epsilon);
}

TEST(Solver, IdenticalInputsGiveZero)
{
    Rng rng(56);
    const BiFiltration f = mdtest::random_one_critical(rng, 6, 6, 1, 16);
    SolverConfig cfg;
    const ApproxResult r = approximate(f, f, cfg);
    EXPECT_EQ(r.delta, 0.0);
    EXPECT_TRUE(r.converged);
}

TEST(Solver, RelativeOnZeroDistanceHitsSafeguard)
{
    Rng rng(57);
    const BiFiltration f = mdtest::random_one_critical(rng, 4, 3, 1, 16);
    SolverConfig cfg;
    cfg.mode = Mode::Relative;
    cfg.max_calls = 500;
    const ApproxResult r = approximate(f, f, cfg);
    EXPECT_FALSE(r.converged);
    EXPECT_EQ(r.stop_reason, StopReason::MaxCalls);
    EXPECT_EQ(r.calls, 500u);
    EXPECT_GE(r.delta, 0.0);
    EXPECT_EQ(r.delta, r.residual_upper);
}

TEST(Solver, LevelCapLeavesHonestResidual)
{
    Rng rng(58);
    const auto p = small_pair(rng, 64);
    SolverConfig cfg;
    cfg.epsilon = 0.01;
    cfg.max_level = 2;
    const ApproxResult r = approximate(p.first, p.second, cfg);
    if (r.converged) GTEST_SKIP() << "resolved above the cap";
    EXPECT_EQ(r.stop_reason, StopReason::MaxLevel);
    EXPECT_LE(r.deepest_level, 2u);
    EXPECT_GE(r.residual_upper, mdtest::sampled_matching_distance(p.first, p.second, 0, 24) - 1e-9);
}

TEST(Solver, TraceUpperBoundIsMonotoneAndEndsAtResult)
{
    Rng rng(59);
    const auto p = small_pair(rng, 32);
    for (Traversal t : {Traversal::BFS, Traversal::DFS, Traversal::Priority}) {
        SolverConfig cfg;
        cfg.epsilon = 0.5;
        cfg.trace = true;
        cfg.traversal = t;
        const ApproxResult r = approximate(p.first, p.second, cfg);
        ASSERT_EQ(r.trace.size(), r.calls);
        const double truth = mdtest::sampled_matching_distance(p.first, p.second, 0, 24);
        double prev_rho = 0.0;
        for (std::size_t i = 0; i < r.trace.size(); ++i) {
            const TraceRow& row = r.trace[i];
            EXPECT_EQ(row.call, i + 1);
            EXPECT_GE(row.rho, prev_rho);
            EXPECT_GE(row.upper, truth - 1e-9) << to_string(t) << " call " << row.call;
            prev_rho = row.rho;
        }
        EXPECT_EQ(r.trace.back().rho, r.rho);
        if (t == Traversal::Priority) {
            for (std::size_t i = 4; i < r.trace.size(); ++i) EXPECT_LE(r.trace[i].upper, r.trace[i - 1].upper);
        }
    }
}

TEST(Solver, BudgetStopsPriorityRun)
{
    Rng rng(60);
    const auto p = normalize_pair(mdtest::random_one_critical(rng, 30, 60, 1, 1000),
                                  mdtest::random_one_critical(rng, 30, 60, 1, 1000));
    SolverConfig cfg;
    cfg.epsilon = 1e-6;
    const ApproxResult r = budgeted_approximate(p.first, p.second, cfg, std::chrono::milliseconds(30));
    EXPECT_FALSE(r.converged);
    EXPECT_EQ(r.stop_reason, StopReason::Budget);
    EXPECT_GE(r.calls, 4u);
    EXPECT_GE(r.residual_upper, r.rho);
    EXPECT_LT(r.elapsed_ms, 30.0 + 1000.0);

    const ApproxResult zero = budgeted_approximate(p.first, p.second, cfg, std::chrono::milliseconds(0));
    EXPECT_EQ(zero.calls, 4u);
}

TEST(Solver, ReductionRateAndRelativeError)
{
    ApproxResult r;
    r.calls = 20;
    r.deepest_evaluated_level = 2;
    EXPECT_DOUBLE_EQ(reduction_rate(r), 1.0 - 20.0 / 16.0);
    r.rho = 2.0;
    r.residual_upper = 2.5;
    EXPECT_DOUBLE_EQ(guaranteed_relative_error(r), 0.25);
    r.rho = 0.0;
    EXPECT_TRUE(std::isinf(guaranteed_relative_error(r)));
}

TEST(Solver, RejectsBadConfiguration)
{
    SolverConfig cfg;
    cfg.epsilon = 0.0;
    EXPECT_EQ(config_error(cfg), ErrorCode::InvalidConfig);
    cfg = {};
    cfg.budget = std::chrono::milliseconds(10);
    EXPECT_EQ(config_error(cfg), ErrorCode::InvalidConfig);
    cfg = {};
    cfg.threads = 0;
    EXPECT_EQ(config_error(cfg), ErrorCode::InvalidConfig);
    cfg = {};
    cfg.traversal = Traversal::Priority;
    cfg.threads = 2;
    EXPECT_EQ(config_error(cfg), ErrorCode::InvalidConfig);
}

TEST(Solver, RequiresPositiveQuadrant)
{
    Rng rng(61);
    const BiFiltration f = translate(mdtest::random_one_critical(rng, 4, 3, 1, 16), {-1, 0});
    EXPECT_THROW(approximate(f, f, SolverConfig{}), Error);
}

TEST(Solver, TraceCsvLayout)
{
    Rng rng(62);
    const auto p = small_pair(rng);
    SolverConfig cfg;
    cfg.trace = true;
    cfg.epsilon = 2.0;
    const ApproxResult r = approximate(p.first, p.second, cfg);
    std::ostringstream os;
    write_trace_csv(os, r.trace);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    EXPECT_EQ(line, "call,elapsed_ms,rho,upper,rel_error,type,lmin,lmax,mmin,mmax,level");
    std::size_t rows = 0;
    while (std::getline(is, line)) {
        ++rows;
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 10);
    }
    EXPECT_EQ(rows, r.calls);
}
