#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "bench.hpp"
#include "cli.hpp"
#include "cps/one_sided.hpp"
#include "cps/oracle.hpp"
#include "cps/solver.hpp"
#include "support.hpp"

using namespace cps;

namespace {

const std::filesystem::path kFixtures = CPS_FIXTURES;

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "cps3f");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch()
{
    static const auto dir = [] {
        auto d = std::filesystem::temp_directory_path() / "cps_cli_test";
        std::filesystem::remove_all(d);
        std::filesystem::create_directories(d);
        return d;
    }();
    return dir;
}

std::string write(const std::string& name, const std::string& text)
{
    const auto path = scratch() / name;
    std::ofstream(path) << text;
    return path.string();
}

}  // namespace

TEST(Cli, FrechetTrivial)
{
    const auto a = write("fa.csv", "0,0\n1,0\n2,1\n");
    EXPECT_EQ(run({"frechet", a, a}).out, "0\n");
    const auto p = write("p.csv", "0,0\n");
    const auto q = write("q.csv", "3,4\n");
    const auto r = run({"frechet", p, q});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "5\n");
    EXPECT_EQ(run({"frechet", p, q, "--witness"}).out, "5\n0 0\n");
}

TEST(Cli, FrechetMatchesLibrary)
{
    std::mt19937_64 rng(44);
    for (int t = 0; t < 10; ++t) {
        const auto a = cps::testing::random_chain(rng, 3 + t % 5);
        const auto b = cps::testing::random_chain(rng, 2 + t % 4);
        const auto fa = write("ra.csv", io::format_chain(a, io::ChainFormat::csv));
        const auto fb = write("rb.json", io::format_chain(b, io::ChainFormat::json));
        const auto r = run({"frechet", fa, fb});
        EXPECT_EQ(r.code, 0);
        EXPECT_EQ(std::stod(r.out), discrete_frechet(a, b).value);
    }
}

TEST(Cli, UsageErrors)
{
    const auto a = write("ua.csv", "0,0\n1,0\n");
    EXPECT_EQ(run({"cps3f", a, a, "--d1", "1", "--d2", "1", "--d3", "1", "--k", "0"}).code, 2);
    EXPECT_EQ(run({"cps3f", a, a, "--d1", "1"}).code, 2);
    EXPECT_EQ(run({"cps3f", a, a, "--d1", "-1", "--d2", "1", "--d3", "1"}).code, 2);
    EXPECT_EQ(run({"frechet", a, (scratch() / "missing.csv").string()}).code, 2);
    EXPECT_EQ(run({"frechet", a, write("bad.csv", "0,zz\n")}).code, 2);
    EXPECT_EQ(run({"nonsense"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"simplify-min-delta", a, a, "--k", "0"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, Cps3fTextAndDecision)
{
    const auto a = write("ca.csv", "0,0\n1,0\n2,0\n3,1\n");
    const auto b = write("cb.csv", "0,0.5\n1.5,0.4\n3,1.2\n");
    const std::vector<std::string> base = {"cps3f", a, b, "--d1", "0.6", "--d2", "0.6", "--d3", "0.7"};
    auto args = base;
    const auto plain = run(args);
    EXPECT_EQ(plain.code, 0);
    EXPECT_EQ(plain.out, "k_star: 4\n");

    args.insert(args.end(), {"--k", "4", "--reconstruct"});
    const auto yes = run(args);
    EXPECT_EQ(yes.code, 0);
    EXPECT_EQ(yes.out, "k_star: 4\na_indices: 0 1 2 3\nb_indices: 0 1 2\ndecision: yes\n");

    auto no = base;
    no.insert(no.end(), {"--k", "3"});
    EXPECT_EQ(run(no).code, 1);

    auto graph = base;
    graph.insert(graph.end(), {"--solver", "graph", "--endpoint-mode", "anchored"});
    EXPECT_EQ(run(graph).code, 0);

    auto capped = base;
    capped.insert(capped.end(), {"--r-cap", "1"});
    EXPECT_EQ(run(capped).out, "k_star: 4\n");

    const auto none = run({"cps3f", a, b, "--d1", "0", "--d2", "0", "--d3", "0"});
    EXPECT_EQ(none.code, 1);
    EXPECT_EQ(none.out, "no solution\n");
}

TEST(Cli, Cps3fJsonGolden)
{
    const auto a = write("golden_a.csv", "0,0\n1,0\n2,0\n3,1\n");
    const auto b = write("golden_b.csv", "0,0.5\n1.5,0.4\n3,1.2\n");
    const auto r = run({"cps3f", a, b, "--d1", "1", "--d2", "0.6", "--d3", "0.7", "--reconstruct", "--json", "-"});
    ASSERT_EQ(r.code, 0);
    auto doc = nlohmann::json::parse(r.out);
    ASSERT_TRUE(doc.contains("timing"));
    EXPECT_GE(doc["timing"]["elapsed_seconds"].get<double>(), 0.0);
    doc.erase("timing");
    const auto golden = nlohmann::json::parse(R"({
      "schema": "cps3f.result/1",
      "status": "optimal",
      "row": {
        "chain_a_id": "golden_a", "chain_b_id": "golden_b", "len_a": 4, "len_b": 3,
        "delta1": 1.0, "delta2": 0.6, "delta3": 0.7, "k_star": 3, "peak_cells": 120,
        "endpoint_mode": "free_dogs", "r_cap_used": null
      },
      "witness": {"a_indices": [0, 1, 3], "b_indices": [0, 1, 2]}
    })");
    EXPECT_EQ(doc, golden) << doc.dump(2);

    // The pinned optimum and witness agree with exhaustive search.
    const auto ca = io::load_chain(a, io::ChainFormat::csv);
    const auto cb = io::load_chain(b, io::ChainFormat::csv);
    CpsParams p;
    p.delta1 = 1;
    p.delta2 = 0.6;
    p.delta3 = 0.7;
    EXPECT_EQ(oracle::brute_cps3f(ca, cb, p), std::optional<std::size_t>(3));
    CpsSolution sol;
    sol.k_star = 3;
    sol.a_indices = doc["witness"]["a_indices"].get<std::vector<std::size_t>>();
    sol.b_indices = doc["witness"]["b_indices"].get<std::vector<std::size_t>>();
    EXPECT_TRUE(cps::testing::witness_ok(ca, cb, p, sol));
}

TEST(Cli, WeightedReduction)
{
    const auto yes = run({"wcps3f", "--set", "1,2,3"});
    EXPECT_EQ(yes.code, 0);
    EXPECT_EQ(yes.out, "budget: 3\nk_star_weight: 3\ndecision: yes\n");
    const auto pos = run({"wcps3f", "--set", "1,2,3", "--positive"});
    EXPECT_EQ(pos.out, "budget: 6\nk_star_weight: 6\ndecision: yes\n");
    EXPECT_EQ(run({"wcps3f", "--set", "1,1,3"}).code, 1);
    EXPECT_EQ(run({"wcps3f", "--set", "1,0"}).code, 2);
    EXPECT_EQ(run({"wcps3f"}).code, 2);

    const auto a = write("wa.csv", "x,y,weight\n0,0,2\n1,0,1\n2,0,5\n");
    const auto r = run({"wcps3f", a, a, "--d1", "1", "--d2", "1", "--d3", "0"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "k_star_weight: 1\n");
}

TEST(Cli, OneSidedCommands)
{
    const auto a = write("oa.csv", "0,0\n1,0\n2,2\n4,1\n");
    const auto mk = run({"simplify-min-k", a, a, "--delta", "0"});
    EXPECT_EQ(mk.code, 0);
    EXPECT_EQ(mk.out, "length: 4\na_indices: 0 1 2 3\n");

    const auto b = write("ob.csv", "0,1\n2,0\n");
    const auto md = run({"simplify-min-delta", a, b, "--k", "1"});
    EXPECT_EQ(md.code, 0);
    const auto lib = simplify_min_delta(io::load_chain(a, io::ChainFormat::csv), io::load_chain(b, io::ChainFormat::csv), 1);
    EXPECT_EQ(md.out, fmt::format("delta: {}\na_indices: {}\n", lib.delta, lib.a_indices.front()));

    const auto os = run({"one-sided", a, a, "--d1", "0", "--d3", "0"});
    EXPECT_EQ(os.out, "length: 4\na_indices: 0 1 2 3\n");
    EXPECT_EQ(run({"one-sided", a, b, "--d1", "0", "--d3", "0"}).code, 1);
}

TEST(Cli, PdbSelectors)
{
    const auto pdb = (kFixtures / "small.pdb").string();
    const auto r = run({"frechet", pdb + ":B", pdb + ":B"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "0\n");
    const auto loaded = cli::load_input(pdb + ":A", io::PdbSelection{});
    EXPECT_EQ(loaded.id, "small.a");
    EXPECT_EQ(loaded.chain.size(), 4u);
    EXPECT_EQ(cli::load_input(pdb, io::PdbSelection{}).id, "small.a");
    EXPECT_EQ(run({"frechet", pdb + ":Q", pdb}).code, 2);
    EXPECT_EQ(run({"frechet", pdb + ":A", pdb + ":A", "--include-hetatm", "--model", "1"}).code, 0);
}

TEST(Cli, BenchAgainstLocalCache)
{
    const auto cache = scratch() / "cache";
    std::filesystem::create_directories(cache);
    std::filesystem::copy_file(kFixtures / "small.pdb", cache / "9xyz.pdb",
                               std::filesystem::copy_options::overwrite_existing);

    const auto rec_a = io::parse_pdb(io::read_file(cache / "9xyz.pdb"), 'A');
    const auto rec_b = io::parse_pdb(io::read_file(cache / "9xyz.pdb"), 'B');
    CpsParams p;
    p.delta1 = 8;
    p.delta2 = 2;
    p.delta3 = 12;
    const auto sol = cps3f_min_dp(rec_a.chain, rec_b.chain, p);
    ASSERT_TRUE(sol.solved());
    const auto k = sol.k_star;

    auto tables = [&](std::size_t expected, std::size_t len_b) {
        return write("tables.json", fmt::format(R"({{"schema": "cps3f.reference_tables/1", "chain_a": "9xyz.a",
            "len_a": 4, "tables": [{{"table": 2, "rows": [{{"chain_b": "9xyz.b", "len_b": {}, "delta1": 8,
            "delta2": 2, "delta3": 12, "expected_k_star": {}}}]}}]}})",
                                                len_b, expected));
    };
    const std::vector<std::string> base = {"bench", "--table", "2", "--cache", cache.string()};

    auto args = base;
    args.insert(args.end(), {"--tables", tables(k, 2)});
    const auto pass = run(args);
    EXPECT_EQ(pass.code, 0) << pass.err;
    EXPECT_NE(pass.out.find(",PASS"), std::string::npos);
    EXPECT_EQ(pass.out.substr(0, pass.out.find('\n')),
              "chain_a_id,chain_b_id,len_a,len_b,delta1,delta2,delta3,k_star,elapsed_seconds,peak_cells,"
              "endpoint_mode,r_cap_used,expected_k_star,status");

    args = base;
    args.insert(args.end(), {"--tables", tables(k + 1, 2), "--out", "json", "--warm-cap", "1"});
    const auto fail = run(args);
    EXPECT_EQ(fail.code, 1);
    const auto doc = nlohmann::json::parse(fail.out);
    EXPECT_EQ(doc["rows"][0]["status"], "FAIL");
    EXPECT_EQ(doc["rows"][0]["row"]["k_star"], k);

    args = base;
    args.insert(args.end(), {"--tables", tables(k, 3)});
    const auto mismatch = run(args);
    EXPECT_EQ(mismatch.code, 1);
    EXPECT_NE(mismatch.out.find("LENGTH_MISMATCH"), std::string::npos);

    args = base;
    args.insert(args.end(), {"--tables", tables(k, 2), "--rows", "7abc.a"});
    EXPECT_EQ(run(args).code, 2);

    const auto empty = scratch() / "empty_cache";
    std::filesystem::create_directories(empty);
    EXPECT_EQ(run({"bench", "--table", "2", "--cache", empty.string(), "--tables", tables(k, 2)}).code, 2);
}

TEST(Cli, ShippedReferenceTables)
{
    const auto t = bench::load_reference_tables(CPS_DEFAULT_TABLES);
    EXPECT_EQ(t.chain_a, "107j.a");
    EXPECT_EQ(t.len_a, 325u);
    ASSERT_EQ(t.table(1).size(), 7u);
    EXPECT_EQ(t.table(1)[0].chain_b, "1hfj.c");
    EXPECT_EQ(t.table(1)[0].expected_k_star, 83u);
    EXPECT_EQ(t.table(2)[0].expected_k_star, 15u);
    EXPECT_EQ(t.table(3).back().chain_b, "2fep.a");
    EXPECT_EQ(t.table(3).back().expected_k_star, 6u);
    EXPECT_EQ(bench::split_chain_id("1toh"), (std::pair<std::string, std::optional<char>>{"1toh", std::nullopt}));
    EXPECT_EQ(bench::split_chain_id("1hfj.c").second, 'C');
}
