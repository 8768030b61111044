#include "bench.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "cli.hpp"

namespace cps::bench {
namespace {

struct RowOutcome {
    BenchRow row;
    std::size_t expected = 0;
    std::string status;
    std::string note;
};

std::string csv_header()
{
    return "chain_a_id,chain_b_id,len_a,len_b,delta1,delta2,delta3,k_star,elapsed_seconds,peak_cells,"
           "endpoint_mode,r_cap_used,expected_k_star,status\n";
}

std::string csv_line(const RowOutcome& o)
{
    const auto& r = o.row;
    return fmt::format("{},{},{},{},{},{},{},{},{:.3f},{},{},{},{},{}\n", r.chain_a_id, r.chain_b_id, r.len_a,
                       r.len_b, r.delta1, r.delta2, r.delta3, r.k_star, r.elapsed_seconds, r.peak_cells,
                       to_string(r.endpoint_mode), r.r_cap_used ? std::to_string(*r.r_cap_used) : std::string(),
                       o.expected, o.status);
}

// Loads one chain through the cache, downloading only when allowed.
Chain load_reference_chain(io::PdbFetcher& fetcher, const std::string& id, bool fetch)
{
    const auto [pdb_id, chain] = split_chain_id(id);
    if (!fetch && !std::filesystem::exists(fetcher.cache_path(pdb_id))) {
        throw io::FetchError(fmt::format("PDB entry '{}' is not cached at {} (rerun with --fetch)", pdb_id,
                                         fetcher.cache_path(pdb_id).string()));
    }
    io::PdbSelection sel;
    sel.chain_id = chain;
    return io::parse_pdb(fetcher.fetch(pdb_id), sel).chain;
}

}  // namespace

nlohmann::json row_json(const BenchRow& row)
{
    nlohmann::json j;
    j["chain_a_id"] = row.chain_a_id;
    j["chain_b_id"] = row.chain_b_id;
    j["len_a"] = row.len_a;
    j["len_b"] = row.len_b;
    j["delta1"] = row.delta1;
    j["delta2"] = row.delta2;
    j["delta3"] = row.delta3;
    j["k_star"] = row.k_star;
    j["peak_cells"] = row.peak_cells;
    j["endpoint_mode"] = std::string(to_string(row.endpoint_mode));
    j["r_cap_used"] = row.r_cap_used ? nlohmann::json(*row.r_cap_used) : nlohmann::json(nullptr);
    return j;
}

const std::vector<ReferenceRow>& ReferenceTables::table(int number) const
{
    for (const auto& [n, rows] : tables) {
        if (n == number) return rows;
    }
    throw io::ParseError(fmt::format("reference tables have no table {}", number));
}

ReferenceTables load_reference_tables(const std::filesystem::path& path)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(io::read_file(path));
        if (doc.at("schema") != "cps3f.reference_tables/1") {
            throw io::ParseError(fmt::format("'{}': unsupported schema", path.string()));
        }
        ReferenceTables out;
        out.chain_a = doc.at("chain_a").get<std::string>();
        out.len_a = doc.at("len_a").get<std::size_t>();
        for (const auto& t : doc.at("tables")) {
            std::vector<ReferenceRow> rows;
            for (const auto& r : t.at("rows")) {
                rows.push_back({r.at("chain_b").get<std::string>(), r.at("len_b").get<std::size_t>(),
                                r.at("delta1").get<double>(), r.at("delta2").get<double>(),
                                r.at("delta3").get<double>(), r.at("expected_k_star").get<std::size_t>()});
            }
            out.tables.emplace_back(t.at("table").get<int>(), std::move(rows));
        }
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw io::ParseError(fmt::format("'{}': {}", path.string(), e.what()));
    }
}

std::pair<std::string, std::optional<char>> split_chain_id(const std::string& id)
{
    const auto dot = id.find('.');
    if (dot == std::string::npos) return {id, std::nullopt};
    if (dot + 2 != id.size()) throw io::ParseError(fmt::format("malformed chain id '{}'", id));
    return {id.substr(0, dot), static_cast<char>(std::toupper(static_cast<unsigned char>(id.back())))};
}

int run_bench(const BenchOptions& options, std::ostream& out, std::ostream& err)
{
    const auto tables = load_reference_tables(options.tables_path);
    const auto& all_rows = tables.table(options.table);

    std::vector<ReferenceRow> selected;
    if (options.rows.empty()) {
        selected = all_rows;
    } else {
        for (const auto& name : options.rows) {
            const auto it = std::find_if(all_rows.begin(), all_rows.end(),
                                         [&](const ReferenceRow& r) { return r.chain_b == name; });
            if (it == all_rows.end()) {
                err << fmt::format("error: table {} has no row '{}'\n", options.table, name);
                return cli::kExitUsage;
            }
            selected.push_back(*it);
        }
    }

    io::PdbFetcher fetcher(options.cache_root, options.transport ? options.transport : io::https_transport());
    Chain a = load_reference_chain(fetcher, tables.chain_a, options.fetch);
    std::map<std::string, Chain> chains_b;
    for (const auto& r : selected) {
        if (!chains_b.count(r.chain_b)) chains_b.emplace(r.chain_b, load_reference_chain(fetcher, r.chain_b, options.fetch));
    }

    std::vector<RowOutcome> outcomes;
    bool all_pass = true;
    for (const auto& ref : selected) {
        const Chain& b = chains_b.at(ref.chain_b);
        RowOutcome o;
        o.expected = ref.expected_k_star;
        o.row.chain_a_id = tables.chain_a;
        o.row.chain_b_id = ref.chain_b;
        o.row.len_a = a.size();
        o.row.len_b = b.size();
        o.row.delta1 = ref.delta1;
        o.row.delta2 = ref.delta2;
        o.row.delta3 = ref.delta3;

        if (a.size() != tables.len_a || b.size() != ref.len_b) {
            o.status = "LENGTH_MISMATCH";
            o.note = fmt::format("parsed lengths {}/{} differ from reference {}/{}", a.size(), b.size(),
                                 tables.len_a, ref.len_b);
            err << fmt::format("{}: {}\n", ref.chain_b, o.note);
            all_pass = false;
            outcomes.push_back(std::move(o));
            continue;
        }

        CpsParams params;
        params.delta1 = ref.delta1;
        params.delta2 = ref.delta2;
        params.delta3 = ref.delta3;
        params.endpoint_mode = EndpointMode::free_dogs;
        params.r_cap = options.warm_cap;

        DpOptions dp;
        if (options.timeout_seconds) {
            dp.deadline = std::chrono::steady_clock::now() +
                          std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                              std::chrono::duration<double>(*options.timeout_seconds));
        }
        CpsSolution sol;
        double elapsed = 0.0;
        std::uint64_t peak = 0;
        const std::size_t full = std::max(a.size(), b.size());
        while (true) {
            sol = cps3f_min_dp(a, b, params, dp);
            elapsed += sol.stats.elapsed_seconds;
            peak = std::max(peak, sol.stats.peak_cells);
            if (sol.status != SolveStatus::r_cap_inconclusive) break;
            const std::size_t next = *params.r_cap * 2;
            if (next >= full) params.r_cap.reset();
            else params.r_cap = next;
        }
        o.row.elapsed_seconds = elapsed;
        o.row.peak_cells = peak;
        o.row.r_cap_used = params.r_cap;
        if (sol.status == SolveStatus::timed_out) {
            o.status = "TIMEOUT";
        } else if (sol.solved()) {
            o.row.k_star = sol.k_star;
            o.status = sol.k_star == ref.expected_k_star ? "PASS" : "FAIL";
        } else {
            o.status = "FAIL";
        }
        if (o.status != "PASS") all_pass = false;
        err << fmt::format("{} vs {}: k_star {} expected {} {} ({:.1f} s)\n", tables.chain_a, ref.chain_b,
                           o.row.k_star, o.expected, o.status, elapsed);
        outcomes.push_back(std::move(o));
    }

    std::ostringstream text;
    if (options.out_format == "json") {
        nlohmann::json doc;
        doc["schema"] = "cps3f.bench/1";
        doc["table"] = options.table;
        doc["rows"] = nlohmann::json::array();
        for (const auto& o : outcomes) {
            doc["rows"].push_back({{"row", row_json(o.row)},
                                   {"expected_k_star", o.expected},
                                   {"status", o.status},
                                   {"timing", {{"elapsed_seconds", o.row.elapsed_seconds}}}});
        }
        text << doc.dump(2) << "\n";
    } else {
        text << csv_header();
        for (const auto& o : outcomes) text << csv_line(o);
    }
    if (options.output) {
        std::ofstream file(*options.output, std::ios::binary);
        if (!file) throw io::ParseError(fmt::format("cannot write '{}'", options.output->string()));
        file << text.str();
    } else {
        out << text.str();
    }
    return all_pass ? cli::kExitOk : cli::kExitNoSolution;
}

}  // namespace cps::bench
