#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "CLI11.hpp"
#include "bench.hpp"
#include "cps/one_sided.hpp"
#include "cps/oracle.hpp"
#include "cps/solver.hpp"

namespace cps::cli {
namespace {

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

bool is_pdb_path(const std::filesystem::path& path)
{
    const auto ext = lower(path.extension().string());
    return ext == ".pdb" || ext == ".ent";
}

// Options shared by every command that reads chains.
struct InputOptions {
    std::string a;
    std::string b;
    char altloc = 'A';
    int model = 1;
    bool include_hetatm = false;

    void add_to(CLI::App& cmd, bool required = true)
    {
        auto* oa = cmd.add_option("A", a, "first chain (file.pdb[:C], .csv or .json)");
        auto* ob = cmd.add_option("B", b, "second chain");
        if (required) {
            oa->required();
            ob->required();
        }
        cmd.add_option("--altloc", altloc, "alternate location kept besides blank")->capture_default_str();
        cmd.add_option("--model", model, "PDB model number")->capture_default_str()->check(CLI::PositiveNumber);
        cmd.add_flag("--include-hetatm", include_hetatm, "read CA atoms from HETATM records too");
    }

    [[nodiscard]] io::PdbSelection selection() const
    {
        io::PdbSelection sel;
        sel.altloc = altloc;
        sel.model = model;
        sel.include_hetatm = include_hetatm;
        return sel;
    }
};

std::string join(const std::vector<std::size_t>& idx)
{
    return fmt::format("{}", fmt::join(idx, " "));
}

void write_json(const nlohmann::json& doc, const std::string& target, std::ostream& out)
{
    const auto text = doc.dump(2) + "\n";
    if (target == "-") {
        out << text;
        return;
    }
    std::ofstream file(target, std::ios::binary);
    if (!file) throw io::ParseError(fmt::format("cannot write '{}'", target));
    file << text;
}

int cmd_frechet(const InputOptions& in, bool witness, std::ostream& out)
{
    const auto a = load_input(in.a, in.selection());
    const auto b = load_input(in.b, in.selection());
    const auto res = discrete_frechet(a.chain, b.chain);
    out << fmt::format("{}\n", res.value);
    if (witness) {
        for (const auto& [i, j] : res.coupling) out << fmt::format("{} {}\n", i, j);
    }
    return kExitOk;
}

struct CpsArgs {
    double d1 = 0.0;
    double d2 = 0.0;
    double d3 = 0.0;
    std::optional<std::size_t> k;
    std::string endpoint_mode = "free_dogs";
    std::optional<std::size_t> r_cap;
    bool reconstruct = false;
    std::string json_out;
    std::string solver = "dp";
    std::uint64_t memory_budget = DpOptions{}.memory_budget;
};

int cmd_cps3f(const InputOptions& in, const CpsArgs& args, std::ostream& out, std::ostream& err)
{
    if (args.k && *args.k == 0) {
        err << "error: --k must be at least 1\n";
        return kExitUsage;
    }
    const auto a = load_input(in.a, in.selection());
    const auto b = load_input(in.b, in.selection());

    CpsParams params;
    params.delta1 = args.d1;
    params.delta2 = args.d2;
    params.delta3 = args.d3;
    params.endpoint_mode = endpoint_mode_from_string(args.endpoint_mode);
    params.r_cap = args.r_cap;
    params.validate();

    CpsSolution sol;
    if (args.solver == "graph") {
        if (args.reconstruct || args.r_cap) {
            err << "error: the graph solver supports neither --reconstruct nor --r-cap\n";
            return kExitUsage;
        }
        sol = cps3f_min_graph(a.chain, b.chain, params);
    } else {
        DpOptions opts;
        opts.reconstruct = args.reconstruct;
        opts.memory_budget = args.memory_budget;
        const std::size_t full = std::max(a.chain.size(), b.chain.size());
        double elapsed = 0.0;
        while (true) {
            sol = cps3f_min_dp(a.chain, b.chain, params, opts);
            elapsed += sol.stats.elapsed_seconds;
            if (sol.status != SolveStatus::r_cap_inconclusive) break;
            const std::size_t next = *params.r_cap * 2;
            if (next >= full) params.r_cap.reset();
            else params.r_cap = next;
        }
        sol.stats.elapsed_seconds = elapsed;
    }

    if (!args.json_out.empty()) {
        bench::BenchRow row;
        row.chain_a_id = a.id;
        row.chain_b_id = b.id;
        row.len_a = a.chain.size();
        row.len_b = b.chain.size();
        row.delta1 = params.delta1;
        row.delta2 = params.delta2;
        row.delta3 = params.delta3;
        row.k_star = sol.solved() ? sol.k_star : 0;
        row.peak_cells = sol.stats.peak_cells;
        row.endpoint_mode = params.endpoint_mode;
        row.r_cap_used = params.r_cap;
        nlohmann::json doc;
        doc["schema"] = "cps3f.result/1";
        doc["status"] = std::string(to_string(sol.status));
        doc["row"] = bench::row_json(row);
        if (args.k) doc["decision"] = sol.solved() && sol.k_star <= *args.k;
        if (sol.solved() && args.reconstruct) {
            doc["witness"] = {{"a_indices", sol.a_indices}, {"b_indices", sol.b_indices}};
        } else {
            doc["witness"] = nullptr;
        }
        doc["timing"] = {{"elapsed_seconds", sol.stats.elapsed_seconds}};
        write_json(doc, args.json_out, out);
    }

    if (!sol.solved()) {
        if (args.json_out != "-") out << "no solution\n";
        if (args.k && args.json_out != "-") out << "decision: no\n";
        return kExitNoSolution;
    }
    if (args.json_out == "-") return args.k && sol.k_star > *args.k ? kExitNoSolution : kExitOk;

    out << fmt::format("k_star: {}\n", sol.k_star);
    if (args.reconstruct) {
        out << fmt::format("a_indices: {}\n", join(sol.a_indices));
        out << fmt::format("b_indices: {}\n", join(sol.b_indices));
    }
    if (args.k) {
        const bool yes = sol.k_star <= *args.k;
        out << fmt::format("decision: {}\n", yes ? "yes" : "no");
        if (!yes) return kExitNoSolution;
    }
    return kExitOk;
}

struct WeightedArgs {
    std::optional<double> d1;
    std::optional<double> d2;
    std::optional<double> d3;
    std::optional<double> k;
    std::vector<unsigned> set;
    bool positive = false;
    std::string endpoint_mode = "free_dogs";
    bool reconstruct = false;
};

int cmd_wcps3f(const InputOptions& in, const WeightedArgs& args, std::ostream& out, std::ostream& err)
{
    std::optional<Chain> a;
    std::optional<Chain> b;
    CpsParams params;
    std::optional<double> k = args.k;
    if (!args.set.empty()) {
        if (!in.a.empty() || !in.b.empty()) {
            err << "error: give either two chains or --set, not both\n";
            return kExitUsage;
        }
        if (std::find(args.set.begin(), args.set.end(), 0u) != args.set.end()) {
            err << "error: --set elements must be positive\n";
            return kExitUsage;
        }
        auto inst = oracle::make_reduction_instance(args.set, args.positive);
        a = std::move(inst.a);
        b = std::move(inst.b);
        params = inst.params;
        if (!k) k = inst.budget;
        out << fmt::format("budget: {}\n", inst.budget);
    } else {
        if (in.a.empty() || in.b.empty()) {
            err << "error: wcps3f needs two chains or --set\n";
            return kExitUsage;
        }
        if (!args.d1 || !args.d2 || !args.d3) {
            err << "error: --d1, --d2 and --d3 are required with chain inputs\n";
            return kExitUsage;
        }
        a = load_input(in.a, in.selection()).chain;
        b = load_input(in.b, in.selection()).chain;
        params.endpoint_mode = endpoint_mode_from_string(args.endpoint_mode);
    }
    if (args.d1) params.delta1 = *args.d1;
    if (args.d2) params.delta2 = *args.d2;
    if (args.d3) params.delta3 = *args.d3;
    if (k && !(*k >= 0.0)) {
        err << "error: --k must be nonnegative\n";
        return kExitUsage;
    }
    params.validate();

    DpOptions opts;
    opts.reconstruct = args.reconstruct;
    const auto res = wcps3f_min(*a, *b, params, opts);
    if (!res.solution.solved()) {
        out << "no solution\n";
        if (k) out << "decision: no\n";
        return kExitNoSolution;
    }
    out << fmt::format("k_star_weight: {}\n", res.k_star_weight);
    if (args.reconstruct) {
        out << fmt::format("a_indices: {}\n", join(res.solution.a_indices));
        out << fmt::format("b_indices: {}\n", join(res.solution.b_indices));
    }
    if (k) {
        const bool yes = res.k_star_weight <= *k;
        out << fmt::format("decision: {}\n", yes ? "yes" : "no");
        if (!yes) return kExitNoSolution;
    }
    return kExitOk;
}

int print_one_sided(const OneSidedResult& res, std::ostream& out)
{
    if (!res.found) {
        out << "no solution\n";
        return kExitNoSolution;
    }
    out << fmt::format("length: {}\n", res.length);
    out << fmt::format("a_indices: {}\n", join(res.a_indices));
    return kExitOk;
}

}  // namespace

LoadedChain load_input(const std::string& spec, const io::PdbSelection& base)
{
    std::filesystem::path path(spec);
    std::optional<char> chain;
    if (spec.size() > 2 && spec[spec.size() - 2] == ':' && is_pdb_path(spec.substr(0, spec.size() - 2))) {
        path = spec.substr(0, spec.size() - 2);
        chain = spec.back();
    }
    if (is_pdb_path(path)) {
        io::PdbSelection sel = base;
        sel.chain_id = chain;
        auto rec = io::parse_pdb(io::read_file(path), sel);
        auto id = lower(path.stem().string());
        if (rec.chain_id != ' ') id += std::string(".") + static_cast<char>(std::tolower(rec.chain_id));
        return {std::move(id), std::move(rec.chain)};
    }
    return {path.stem().string(), io::load_chain(path, io::format_from_path(path))};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact chain pair simplification under the discrete Frechet distance", "cps3f"};
    app.require_subcommand(1);

    InputOptions fr_in;
    bool fr_witness = false;
    auto* fr = app.add_subcommand("frechet", "discrete Frechet distance of two chains");
    fr_in.add_to(*fr);
    fr->add_flag("--witness", fr_witness, "also print an optimal coupling, one index pair per line");

    InputOptions cps_in;
    CpsArgs cps_args;
    auto* cps = app.add_subcommand("cps3f", "minimum max(|A'|,|B'|) simplification pair");
    cps_in.add_to(*cps);
    cps->add_option("--d1", cps_args.d1, "leash between A and A'")->required();
    cps->add_option("--d2", cps_args.d2, "leash between B and B'")->required();
    cps->add_option("--d3", cps_args.d3, "leash between A' and B'")->required();
    cps->add_option("--k", cps_args.k, "answer yes/no for max(|A'|,|B'|) <= k");
    cps->add_option("--endpoint-mode", cps_args.endpoint_mode, "anchored or free_dogs")->capture_default_str();
    cps->add_option("--r-cap", cps_args.r_cap, "initial cap on r; doubled until the answer is proven")
        ->check(CLI::PositiveNumber);
    cps->add_flag("--reconstruct", cps_args.reconstruct, "print the simplification indices");
    cps->add_option("--json", cps_args.json_out, "write a JSON result to this file ('-' for stdout)");
    cps->add_option("--solver", cps_args.solver, "dp or graph")
        ->check(CLI::IsMember({"dp", "graph"}))
        ->capture_default_str();
    cps->add_option("--memory-budget", cps_args.memory_budget, "byte limit for --reconstruct")
        ->capture_default_str();

    InputOptions w_in;
    WeightedArgs w_args;
    auto* w = app.add_subcommand("wcps3f", "weighted variant: minimum max(C(A'),C(B'))");
    w_in.add_to(*w, false);
    w->add_option("--d1", w_args.d1, "leash between A and A'");
    w->add_option("--d2", w_args.d2, "leash between B and B'");
    w->add_option("--d3", w_args.d3, "leash between A' and B'");
    w->add_option("--k", w_args.k, "answer yes/no for weight <= k (defaults to the budget with --set)");
    w->add_option("--set", w_args.set, "build the set-partition instance for these positive integers")
        ->delimiter(',');
    w->add_flag("--positive", w_args.positive, "strictly positive weights variant of --set");
    w->add_option("--endpoint-mode", w_args.endpoint_mode, "anchored or free_dogs")->capture_default_str();
    w->add_flag("--reconstruct", w_args.reconstruct, "print the simplification indices");

    InputOptions os_in;
    double os_d1 = 0.0;
    double os_d3 = 0.0;
    auto* os = app.add_subcommand("one-sided", "shortest A' close to A and to B");
    os_in.add_to(*os);
    os->add_option("--d1", os_d1, "leash between A and A'")->required();
    os->add_option("--d3", os_d3, "leash between A' and B")->required();

    InputOptions mk_in;
    double mk_delta = 0.0;
    auto* mk = app.add_subcommand("simplify-min-k", "shortest A' within delta of B");
    mk_in.add_to(*mk);
    mk->add_option("--delta", mk_delta, "leash between A' and B")->required();

    InputOptions md_in;
    std::size_t md_k = 0;
    auto* md = app.add_subcommand("simplify-min-delta", "smallest distance to B over A' with at most k vertices");
    md_in.add_to(*md);
    md->add_option("--k", md_k, "vertex budget for A'")->required();

    bench::BenchOptions bopts;
    std::string cache_dir;
    std::string tables = CPS_DEFAULT_TABLES;
    auto* bn = app.add_subcommand("bench", "rerun the reference protein tables");
    bn->add_option("--table", bopts.table, "1, 2 or 3")->required()->check(CLI::Range(1, 3));
    bn->add_option("--rows", bopts.rows, "chain B ids to run (default: all)")->delimiter(',');
    bn->add_flag("--fetch", bopts.fetch, "download missing PDB entries");
    bn->add_option("--out", bopts.out_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    bn->add_option("--output", bopts.output, "write rows to this file instead of stdout");
    bn->add_option("--timeout", bopts.timeout_seconds, "per-row time limit in seconds");
    bn->add_option("--warm-cap", bopts.warm_cap, "start with this r-cap and double it until proven")
        ->check(CLI::PositiveNumber);
    bn->add_option("--cache", cache_dir, "PDB cache directory (default: $CPS_PDB_CACHE)");
    bn->add_option("--tables", tables, "reference table file")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*fr) return cmd_frechet(fr_in, fr_witness, out);
        if (*cps) return cmd_cps3f(cps_in, cps_args, out, err);
        if (*w) return cmd_wcps3f(w_in, w_args, out, err);
        if (*os) {
            const auto a = load_input(os_in.a, os_in.selection());
            const auto b = load_input(os_in.b, os_in.selection());
            return print_one_sided(one_sided_cps3f_min(a.chain, b.chain, os_d1, os_d3), out);
        }
        if (*mk) {
            const auto a = load_input(mk_in.a, mk_in.selection());
            const auto b = load_input(mk_in.b, mk_in.selection());
            return print_one_sided(simplify_min_k(a.chain, b.chain, mk_delta), out);
        }
        if (*md) {
            const auto a = load_input(md_in.a, md_in.selection());
            const auto b = load_input(md_in.b, md_in.selection());
            const auto res = simplify_min_delta(a.chain, b.chain, md_k);
            out << fmt::format("delta: {}\n", res.delta);
            out << fmt::format("a_indices: {}\n", join(res.a_indices));
            return kExitOk;
        }
        if (*bn) {
            bopts.cache_root = cache_dir.empty() ? io::default_cache_root() : std::filesystem::path(cache_dir);
            bopts.tables_path = tables;
            return bench::run_bench(bopts, out, err);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace cps::cli
