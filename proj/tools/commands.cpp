#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>

#include <CLI11.hpp>

#include "heatmap.hpp"
#include "matchdist/generator.hpp"
#include "matchdist/io.hpp"
#include "matchdist/solver.hpp"

namespace matchdist::cli {

namespace fs = std::filesystem;

namespace {

using io::format_double;

std::ofstream open_out(const fs::path& path)
{
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) fail(ErrorCode::IoError, "cannot write " + path.string());
    return f;
}

NormalizedPair load_pair(const std::string& a, const std::string& b)
{
    return normalize_pair(io::read_bifiltration_file(a), io::read_bifiltration_file(b));
}

// --- dist ------------------------------------------------------------------

struct DistArgs {
    std::string a, b;
    double epsilon = 0.0;
    bool relative = false;
    std::string bound = "l";
    int dim = 0;
    std::string traversal = "bfs";
    std::optional<long long> budget_ms;
    std::string trace;
    std::string dump;
    unsigned threads = 1;
    std::optional<unsigned> max_level;
    std::optional<std::uint64_t> max_calls;
};

void write_diagrams(const fs::path& dir, const NormalizedPair& p, const ApproxResult& r, int dim)
{
    fs::create_directories(dir);
    const Evaluator::Detail d = Evaluator(p.first, p.second, dim).detail(r.best_slice);
    auto header = [&](std::ostream& o) {
        o << "# slice type=" << to_string(r.best_slice.type) << " lambda=" << format_double(r.best_slice.lambda)
          << " mu=" << format_double(r.best_slice.mu) << " bottleneck=" << format_double(d.distance) << '\n';
    };
    std::ofstream first = open_out(dir / "first.txt");
    header(first);
    write_diagram(first, d.first);
    std::ofstream second = open_out(dir / "second.txt");
    header(second);
    write_diagram(second, d.second);
}

int run_dist(const DistArgs& a, std::ostream& out, std::ostream& err)
{
    SolverConfig cfg;
    cfg.mode = a.relative ? Mode::Relative : Mode::Absolute;
    cfg.epsilon = a.epsilon;
    cfg.bound = *bound_kind_from_string(a.bound);
    cfg.homology_dim = a.dim;
    cfg.traversal = *traversal_from_string(a.traversal);
    if (a.budget_ms) cfg.budget = std::chrono::milliseconds(*a.budget_ms);
    cfg.trace = !a.trace.empty();
    cfg.threads = a.threads;
    cfg.max_level = a.max_level;
    cfg.max_calls = a.max_calls;

    const NormalizedPair p = load_pair(a.a, a.b);
    const ApproxResult r = approximate(p.first, p.second, cfg);

    out << "delta " << format_double(r.delta) << '\n'
        << "rho " << format_double(r.rho) << '\n'
        << "residual_upper " << format_double(r.residual_upper) << '\n'
        << "calls " << r.calls << '\n'
        << "deepest_level " << r.deepest_level << '\n'
        << "best_slice " << to_string(r.best_slice.type) << ' ' << format_double(r.best_slice.lambda) << ' '
        << format_double(r.best_slice.mu) << '\n'
        << "status " << (r.converged ? "converged" : "not_converged") << '\n';
    // Wall time varies between runs, so it stays off stdout.
    err << "wall_time_ms " << format_double(r.elapsed_ms) << '\n';

    if (cfg.trace) {
        std::ofstream t = open_out(a.trace);
        write_trace_csv(t, r.trace);
    }
    if (!a.dump.empty()) write_diagrams(a.dump, p, r, a.dim);
    if (!r.converged) {
        err << "NotConverged: stopped by " << to_string(r.stop_reason) << "; delta is an honest bound with residual "
            << format_double(r.residual_upper) << '\n';
        return kExitNotConverged;
    }
    return kExitOk;
}

// --- heatmap ---------------------------------------------------------------

int run_heatmap(const std::string& a, const std::string& b, unsigned depth, int dim, const std::string& out_dir,
                std::ostream& out)
{
    if (depth > kMaxHeatmapDepth)
        fail(ErrorCode::DepthTooLarge,
             "depth " + std::to_string(depth) + " exceeds " + std::to_string(kMaxHeatmapDepth));
    const NormalizedPair p = load_pair(a, b);
    const HeatmapGrid h = compute_heatmap(p.first, p.second, depth, dim);
    const fs::path dir(out_dir);
    fs::create_directories(dir);
    double peak = 0.0;
    for (SliceType t : kSliceTypes) {
        const Grid& g = h.cells[static_cast<std::size_t>(t)];
        std::ofstream f = open_out(dir / (std::string(to_string(t)) + ".csv"));
        write_grid_csv(f, to_string(t), depth, g);
        for (const auto& row : g) peak = std::max(peak, *std::max_element(row.begin(), row.end()));
    }
    std::ofstream f = open_out(dir / "glued.csv");
    write_grid_csv(f, "glued", depth, glue(h));
    out << "depth " << depth << '\n' << "max " << format_double(peak) << '\n';
    return kExitOk;
}

// --- gen -------------------------------------------------------------------

int run_gen(const GenSpec& spec, const std::string& out_path, std::ostream& out)
{
    const BiFiltration f = generate_random(spec);
    if (out_path.empty()) {
        io::write_bifiltration(out, f);
    } else {
        std::ofstream file = open_out(out_path);
        io::write_bifiltration(file, f);
    }
    return kExitOk;
}

// --- bench -----------------------------------------------------------------

struct BenchArgs {
    std::string dir;
    double epsilon = 0.5;
    bool relative = false;
    bool same_size_only = false;
    std::string csv;
    int dim = 0;
};

struct BenchRow {
    std::string first, second;
    BoundKind bound;
    ApproxResult result;
};

struct Stats {
    double avg = 0.0, min = 0.0, max = 0.0;
};

Stats stats_of(const std::vector<double>& v)
{
    Stats s;
    if (v.empty()) return s;
    s.avg = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    s.min = *std::min_element(v.begin(), v.end());
    s.max = *std::max_element(v.begin(), v.end());
    return s;
}

void write_bench_rows(std::ostream& o, const std::vector<BenchRow>& rows)
{
    o << "first,second,bound,calls,time_ms,deepest_level,reduction_rate,delta,converged\n";
    for (const BenchRow& r : rows) {
        o << r.first << ',' << r.second << ',' << to_string(r.bound) << ',' << r.result.calls << ','
          << format_double(r.result.elapsed_ms) << ',' << r.result.deepest_evaluated_level << ','
          << format_double(reduction_rate(r.result)) << ',' << format_double(r.result.delta) << ','
          << (r.result.converged ? 1 : 0) << '\n';
    }
}

int run_bench(const BenchArgs& a, std::ostream& out)
{
    std::vector<fs::path> files;
    if (!fs::is_directory(a.dir)) fail(ErrorCode::IoError, a.dir + " is not a directory");
    for (const auto& e : fs::directory_iterator(a.dir))
        if (e.is_regular_file()) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (files.size() < 2) fail(ErrorCode::EmptyDataset, "need at least two bi-filtration files in " + a.dir);

    std::vector<BiFiltration> data;
    data.reserve(files.size());
    for (const auto& f : files) data.push_back(io::read_bifiltration_file(f));

    SolverConfig cfg;
    cfg.mode = a.relative ? Mode::Relative : Mode::Absolute;
    cfg.epsilon = a.epsilon;
    cfg.homology_dim = a.dim;

    constexpr std::array<BoundKind, 3> kinds{BoundKind::Global, BoundKind::LocalConstant, BoundKind::LocalLinear};
    std::vector<BenchRow> rows;
    std::vector<double> calls_gc, calls_cl, time_gc, time_cl;
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (std::size_t j = i + 1; j < data.size(); ++j) {
            if (a.same_size_only && data[i].size() != data[j].size()) continue;
            const NormalizedPair p = normalize_pair(data[i], data[j]);
            std::array<ApproxResult, 3> res;
            for (std::size_t k = 0; k < kinds.size(); ++k) {
                cfg.bound = kinds[k];
                res[k] = approximate(p.first, p.second, cfg);
                rows.push_back({files[i].filename().string(), files[j].filename().string(), kinds[k], res[k]});
            }
            auto ratio = [](double num, double den) { return den > 0.0 ? num / den : 1.0; };
            calls_gc.push_back(ratio(static_cast<double>(res[0].calls), static_cast<double>(res[1].calls)));
            calls_cl.push_back(ratio(static_cast<double>(res[1].calls), static_cast<double>(res[2].calls)));
            time_gc.push_back(ratio(res[0].elapsed_ms, res[1].elapsed_ms));
            time_cl.push_back(ratio(res[1].elapsed_ms, res[2].elapsed_ms));
        }
    }
    if (rows.empty()) fail(ErrorCode::EmptyDataset, "no pairs to compare in " + a.dir);

    write_bench_rows(out, rows);
    out << "\nsummary,avg,min,max\n";
    auto line = [&](const char* name, const std::vector<double>& v) {
        const Stats s = stats_of(v);
        out << name << ',' << format_double(s.avg) << ',' << format_double(s.min) << ',' << format_double(s.max)
            << '\n';
    };
    line("calls_g/c", calls_gc);
    line("calls_c/l", calls_cl);
    line("time_g/c", time_gc);
    line("time_c/l", time_cl);

    if (!a.csv.empty()) {
        std::ofstream f = open_out(a.csv);
        write_bench_rows(f, rows);
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Matching distance between bi-filtrations by quad-tree subdivision", "matchdist"};
    app.require_subcommand(1);

    const std::vector<std::string> bound_names{"l", "c", "g"};
    const std::vector<std::string> traversal_names{"bfs", "dfs", "priority"};

    DistArgs dist;
    auto* dist_cmd = app.add_subcommand("dist", "Approximate the matching distance of two bi-filtrations");
    dist_cmd->add_option("first", dist.a, "First bi-filtration file")->required()->check(CLI::ExistingFile);
    dist_cmd->add_option("second", dist.b, "Second bi-filtration file")->required()->check(CLI::ExistingFile);
    dist_cmd->add_option("--epsilon", dist.epsilon, "Absolute or relative error")
        ->required()
        ->check(CLI::PositiveNumber);
    dist_cmd->add_flag("--relative", dist.relative, "Relative error guarantee");
    dist_cmd->add_option("--bound", dist.bound, "Bound: l, c or g")->check(CLI::IsMember(bound_names));
    dist_cmd->add_option("--dim", dist.dim, "Homology dimension")->check(CLI::NonNegativeNumber);
    dist_cmd->add_option("--traversal", dist.traversal, "bfs, dfs or priority")
        ->check(CLI::IsMember(traversal_names));
    dist_cmd->add_option("--budget-ms", dist.budget_ms, "Wall-clock budget (priority traversal)")
        ->check(CLI::NonNegativeNumber);
    dist_cmd->add_option("--trace", dist.trace, "Write a per-call trace CSV");
    dist_cmd->add_option("--dump-diagrams", dist.dump, "Write the diagrams at the best slice to this directory");
    dist_cmd->add_option("--threads", dist.threads, "Worker threads (bfs/dfs)")->check(CLI::PositiveNumber);
    dist_cmd->add_option("--max-level", dist.max_level, "Never split boxes at this level");
    dist_cmd->add_option("--max-calls", dist.max_calls, "Stop after this many evaluations");

    std::string hm_a, hm_b, hm_out;
    unsigned hm_depth = 0;
    int hm_dim = 0;
    auto* hm_cmd = app.add_subcommand("heatmap", "Bottleneck distances at all box centers of one level");
    hm_cmd->add_option("first", hm_a)->required()->check(CLI::ExistingFile);
    hm_cmd->add_option("second", hm_b)->required()->check(CLI::ExistingFile);
    hm_cmd->add_option("--depth", hm_depth, "Quad-tree level")->required();
    hm_cmd->add_option("--dim", hm_dim, "Homology dimension")->check(CLI::NonNegativeNumber);
    hm_cmd->add_option("--out", hm_out, "Output directory")->required();

    GenSpec gen;
    std::string gen_out;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a random 1-critical bi-filtration");
    gen_cmd->add_option("--vertices", gen.n_vertices)->required();
    gen_cmd->add_option("--maximal", gen.n_maximal)->required();
    gen_cmd->add_option("--dim", gen.max_dim)->required();
    gen_cmd->add_option("--seed", gen.seed)->required();
    gen_cmd->add_option("--coord-range", gen.coord_range)->capture_default_str();
    gen_cmd->add_option("--out", gen_out, "Output file (stdout when absent)");

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "Compare the three bounds over all pairs of a dataset");
    bench_cmd->add_option("dir", bench.dir, "Directory of bi-filtration files")->required();
    bench_cmd->add_option("--epsilon", bench.epsilon)->capture_default_str()->check(CLI::PositiveNumber);
    bench_cmd->add_flag("--relative", bench.relative);
    bench_cmd->add_flag("--same-size-only", bench.same_size_only, "Only pairs with equal simplex counts");
    bench_cmd->add_option("--csv", bench.csv, "Also write the per-run rows here");
    bench_cmd->add_option("--dim", bench.dim)->check(CLI::NonNegativeNumber);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (*dist_cmd) return run_dist(dist, out, err);
        if (*hm_cmd) return run_heatmap(hm_a, hm_b, hm_depth, hm_dim, hm_out, out);
        if (*gen_cmd) return run_gen(gen, gen_out, out);
        if (*bench_cmd) return run_bench(bench, out);
    } catch (const Error& e) {
        err << e.what() << '\n';
        return kExitError;
    } catch (const fs::filesystem_error& e) {
        err << "IoError: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}

}  // namespace matchdist::cli
